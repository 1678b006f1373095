"""Exact linear algebra over free abelian groups.

Maps between lattices carry name tags for their domain and codomain; every
composite operation checks the tags, since silently mixing up the half dozen
lattices floating around a weight setup is the main bug class here.

Matrices are tuples of row tuples and act on column vectors: the matrix of
``f`` has one row per codomain coordinate, one column per domain coordinate.
All integer arithmetic is arbitrary precision, rationals are
``fractions.Fraction`` (always in lowest terms by construction).
"""

from dataclasses import dataclass
from fractions import Fraction


def identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m):
    return tuple(zip(*m)) if m else ()


def mat_vec(m, v):
    return tuple(sum(r[j] * v[j] for j in range(len(v))) for r in m)


def mat_mul(a, b):
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def _xgcd(a, b):
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def matrix_rank(m):
    """Rank over Q, by fraction Gaussian elimination."""
    work = [[Fraction(x) for x in row] for row in m]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pv = work[rank][col]
        for i in range(rank + 1, len(work)):
            if work[i][col] != 0:
                f = work[i][col] / pv
                work[i] = [x - f * y for x, y in zip(work[i], work[rank])]
        rank += 1
    return rank


def hnf_rows(rows, width=None):
    """Canonical Hermite normal form basis of the lattice spanned by `rows`.

    Rows come out sorted by pivot column, pivots positive, entries above a
    pivot reduced into [0, pivot).  This is a complete invariant of the row
    lattice, so it doubles as our equality test for integer lattices.
    """
    rows = [list(r) for r in rows]
    if width is None:
        width = len(rows[0]) if rows else 0
    basis = []          # echelon rows, ordered by pivot column
    pivot_cols = []
    for vec in rows:
        vec = list(vec)
        j = 0
        while j < width:
            if vec[j] == 0:
                j += 1
                continue
            if j in pivot_cols:
                p = pivot_cols.index(j)
                row = basis[p]
                a, b = row[j], vec[j]
                if b % a == 0:
                    q = b // a
                    vec = [x - q * y for x, y in zip(vec, row)]
                else:
                    x, y, g = _xgcd(a, b)
                    new_row = [x * u + y * v for u, v in zip(row, vec)]
                    vec = [-(b // g) * u + (a // g) * v for u, v in zip(row, vec)]
                    basis[p] = new_row
                # vec[j] is now 0; move on
            else:
                if vec[j] < 0:
                    vec = [-x for x in vec]
                where = next((k for k, c in enumerate(pivot_cols) if c > j), len(pivot_cols))
                basis.insert(where, vec)
                pivot_cols.insert(where, j)
                break
    # reduce entries above each pivot into [0, pivot)
    for p in range(len(basis)):
        j = pivot_cols[p]
        d = basis[p][j]
        for q in range(p):
            f = basis[q][j] // d
            if f:
                basis[q] = [x - f * y for x, y in zip(basis[q], basis[p])]
    return tuple(tuple(r) for r in basis)


def smith_normal_form(matrix):
    """U, S, V with U*matrix*V = S, S diagonal with d1 | d2 | ..., det(U), det(V) = ±1.

    Deterministic: the pivot is always the smallest-magnitude nonzero entry of
    the remaining submatrix (ties broken by position).
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    S = [list(r) for r in matrix]
    U = [list(r) for r in identity_matrix(m)]
    V = [list(r) for r in identity_matrix(n)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in S:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        S[dst] = [x + q * y for x, y in zip(S[dst], S[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for r in S:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = S[i][j]
                    if v != 0 and (best is None or abs(v) < abs(S[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            if best[0] != t:
                swap_rows(t, best[0])
            if best[1] != t:
                swap_cols(t, best[1])
            if S[t][t] < 0:
                S[t] = [-x for x in S[t]]
                U[t] = [-x for x in U[t]]
            d = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t] != 0:
                    add_row(i, t, -(S[i][t] // d))
                    if S[i][t] != 0:
                        dirty = True
            for j in range(t + 1, n):
                if S[t][j] != 0:
                    add_col(j, t, -(S[t][j] // d))
                    if S[t][j] != 0:
                        dirty = True
            if dirty:
                continue
            bad = None
            for i in range(t + 1, m):
                if any(S[i][j] % d != 0 for j in range(t + 1, n)):
                    bad = i
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
    return (
        tuple(tuple(r) for r in U),
        tuple(tuple(r) for r in S),
        tuple(tuple(r) for r in V),
    )


@dataclass(frozen=True)
class LatticeMap:
    """Integer matrix between named lattices, acting on column vectors.

    `width` only matters for zero-row matrices (maps into a rank-0 lattice),
    where the domain rank cannot be read off the entries.
    """

    entries: tuple
    domain: str
    codomain: str
    width: int = 0

    def __post_init__(self):
        ent = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", ent)
        widths = {len(r) for r in ent}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        if ent:
            object.__setattr__(self, "width", len(ent[0]))

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0]) if self.entries else self.width

    def apply(self, v):
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} into {self.domain} of rank {self.cols}")
        return mat_vec(self.entries, v)

    def compose(self, other):
        """self after other (domain tags checked)."""
        if other.codomain != self.domain:
            raise ValueError(f"cannot compose: {other.codomain!r} != {self.domain!r}")
        return LatticeMap(mat_mul(self.entries, other.entries), other.domain, self.codomain)

    def transposed(self):
        return LatticeMap(transpose(self.entries), f"{self.codomain}*", f"{self.domain}*")

    def rank(self):
        return matrix_rank(self.entries)

    def column(self, j):
        return tuple(r[j] for r in self.entries)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def to_json(self):
        return {
            "domain": self.domain,
            "codomain": self.codomain,
            "entries": [[str(x) for x in row] for row in self.entries],
        }


@dataclass(frozen=True)
class RationalMap:
    """Rational matrix between named spaces; same orientation as LatticeMap."""

    entries: tuple
    domain: str
    codomain: str
    width: int = 0

    def __post_init__(self):
        ent = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", ent)
        if ent:
            object.__setattr__(self, "width", len(ent[0]))

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0]) if self.entries else self.width

    def apply(self, v):
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} into {self.domain} of rank {self.cols}")
        return mat_vec(self.entries, v)

    def to_json(self):
        return {
            "domain": self.domain,
            "codomain": self.codomain,
            "entries": [[_frac_str(x) for x in row] for row in self.entries],
        }


def _frac_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _int_kernel_rows(matrix, ncols):
    """HNF basis rows of the saturated kernel {x : matrix @ x = 0}."""
    if not matrix:
        return identity_matrix(ncols)
    _, S, V = smith_normal_form(matrix)
    r = sum(1 for i in range(min(len(S), ncols)) if S[i][i] != 0)
    cols = [tuple(V[i][j] for i in range(ncols)) for j in range(r, ncols)]
    return hnf_rows(cols, ncols)


def kernel_basis(a: LatticeMap, name=None) -> LatticeMap:
    """Embedding of the saturated kernel of `a`, basis in canonical HNF."""
    rows = _int_kernel_rows(a.entries, a.cols)
    name = name or f"ker({a.domain}->{a.codomain})"
    ent = transpose(rows) if rows else tuple(() for _ in range(a.cols))
    return LatticeMap(ent, name, a.domain)


def quotient_projection(b: LatticeMap, name=None) -> LatticeMap:
    """Projection onto the torsion-free cokernel of an injective embedding `b`.

    The rows are the canonical HNF basis of {f : f ∘ b = 0}, so the kernel of
    the result is exactly the saturation of the image of `b`.
    """
    if b.rank() != b.cols:
        raise ValueError("embedding is not injective")
    rows = _int_kernel_rows(transpose(b.entries), b.rows)
    name = name or f"{b.codomain}/{b.domain}"
    return LatticeMap(rows, b.codomain, name, width=b.rows)


def integral_section(pi: LatticeMap) -> LatticeMap:
    """A section s with pi ∘ s = id, from the Smith decomposition of pi.

    Requires pi surjective onto a free lattice (all elementary divisors 1).
    """
    U, S, V = smith_normal_form(pi.entries)
    r = pi.rows
    if r > pi.cols or any(S[i][i] != 1 for i in range(r)):
        raise ValueError("map is not surjective")
    vcols = tuple(tuple(V[i][j] for j in range(r)) for i in range(pi.cols))
    ent = mat_mul(vcols, U)
    s = LatticeMap(ent, pi.codomain, pi.domain)
    if mat_mul(pi.entries, s.entries) != identity_matrix(r):
        raise AssertionError("section construction failed")
    return s


def check_retraction(t, emb) -> bool:
    """True iff t ∘ emb is exactly the identity."""
    t_entries = t.entries if hasattr(t, "entries") else tuple(tuple(Fraction(x) for x in r) for r in t)
    if len(t_entries[0]) != emb.rows:
        raise ValueError("dimension mismatch")
    prod = mat_mul(t_entries, emb.entries)
    return prod == identity_matrix(emb.cols)


def rational_solve(matrix, rhs):
    """One exact solution of matrix @ x = rhs, or None if inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    work = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        pv = work[r][col]
        work[r] = [x / pv for x in work[r]]
        for i in range(m):
            if i != r and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if work[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = work[i][n]
    return tuple(x)


def rational_left_inverse(matrix):
    """Exact left inverse of a full-column-rank matrix (rows of the RREF transform)."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    work = [[Fraction(x) for x in row] + [Fraction(1 if j == i else 0) for j in range(m)]
            for i, row in enumerate(matrix)]
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if work[i][col] != 0), None)
        if piv is None:
            raise ValueError("matrix does not have full column rank")
        work[r], work[piv] = work[piv], work[r]
        pv = work[r][col]
        work[r] = [x / pv for x in work[r]]
        for i in range(m):
            if i != r and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        r += 1
    return tuple(tuple(work[i][n:]) for i in range(n))
