"""Small exact-arithmetic vector helpers shared by the polyhedral kernels.

Everything works on plain tuples/lists of Python ints or Fractions; no
floats anywhere.
"""

from fractions import Fraction
from math import gcd


def dot(a, b):
    s = 0
    for x, y in zip(a, b):
        s += x * y
    return s


def vec_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v):
    """Divide an integer vector by the gcd of its entries (0 stays 0)."""
    g = vec_gcd(v)
    if g in (0, 1):
        return tuple(v)
    return tuple(x // g for x in v)


def neg(v):
    return tuple(-x for x in v)


def is_zero(v):
    return all(x == 0 for x in v)


def scale_to_int(v):
    """Clear denominators of a rational vector; returns a primitive int tuple."""
    lcm = 1
    for x in v:
        if isinstance(x, Fraction):
            d = x.denominator
            lcm = lcm // gcd(lcm, d) * d
    if lcm == 1:
        return primitive(tuple(int(x) for x in v))
    return primitive(tuple(int(x * lcm) for x in v))


def sign_canonical(v):
    """Flip the sign of an integer vector so its first nonzero entry is > 0."""
    for x in v:
        if x > 0:
            return tuple(v)
        if x < 0:
            return neg(v)
    return tuple(v)


def rref_primitive(rows, width):
    """Reduced row echelon of a rational row space, rows scaled to primitive ints.

    The result is the canonical basis of the *saturated* integer lattice of
    the row space (pivot entries positive, zeros above and below pivots).
    """
    work = [[Fraction(x) for x in r] for r in rows]
    basis = []
    col = 0
    r = 0
    while r < len(work) and col < width:
        piv = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        work[r], work[piv] = work[piv], work[r]
        pv = work[r][col]
        work[r] = [x / pv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        r += 1
        col += 1
    for row in work[:r]:
        iv = scale_to_int(row)
        basis.append(sign_canonical(iv))
    return tuple(basis)


def reduce_mod_rows(v, rows):
    """Canonical representative of v modulo the span of RREF-shaped rows.

    Zeroes out the pivot coordinate of every row; exact over Q.
    """
    if not rows:
        return tuple(v)
    out = [Fraction(x) for x in v]
    for row in rows:
        p = next(i for i, x in enumerate(row) if x != 0)
        if out[p] != 0:
            f = out[p] / row[p]
            out = [x - f * y for x, y in zip(out, row)]
    return tuple(out)


def reduce_mod_rows_int(v, rows):
    """Like reduce_mod_rows but rescales the result to a primitive int vector."""
    return scale_to_int(reduce_mod_rows(v, rows))
