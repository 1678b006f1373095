"""Exact rational polyhedra, cones, fans and subdivisions.

Every object carries both a generator description (vertices, rays, lineality)
and an inequality description (halfspaces, equations), kept in a canonical
form: rays are primitive, reduced modulo the lineality space and sorted,
the lineality basis is the saturated RREF, halfspace rows are primitive
integer vectors.  Equality of polyhedra is plain structural equality of the
canonical data, which is what the golden tests rely on.

The empty polyhedron is a value, not an error; operations that genuinely
need a point (minimisation, Minkowski sums) raise on it.

Conversions between the two descriptions run through the double description
kernel in ``ppfan.dd``.  Polyhedra are homogenised with one extra trailing
coordinate.
"""

from dataclasses import dataclass
from fractions import Fraction

from ._vecops import dot, is_zero, neg, scale_to_int, sign_canonical
from .dd import dd_cone
from .lattice import hnf_rows


class LatticeMismatch(ValueError):
    pass


def _check_same_ambient(a, b):
    if a.ambient != b.ambient:
        raise LatticeMismatch(f"ambient lattices differ: {a.ambient!r} vs {b.ambient!r}")


def _frac_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# cones


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone with canonical dual description."""

    ambient: str
    dim_ambient: int
    rays: tuple
    lineality: tuple
    ineqs: tuple   # a.x >= 0
    eqs: tuple     # a.x == 0

    @staticmethod
    def from_rays(ambient, dim_ambient, rays, lineality=()):
        rays = [scale_to_int(tuple(r)) for r in rays]
        lineality = [scale_to_int(tuple(l)) for l in lineality]
        # facets and span equations come from the polar cone
        pol_rays, pol_lin = dd_cone(dim_ambient, rays, lineality)
        ineqs = tuple(r for r in pol_rays if not is_zero(r))
        eqs = pol_lin
        c_rays, c_lin = dd_cone(dim_ambient, ineqs, eqs)
        return Cone(ambient, dim_ambient, c_rays, c_lin, ineqs, eqs)

    @staticmethod
    def from_ineqs(ambient, dim_ambient, ineqs, eqs=()):
        ineqs = [scale_to_int(tuple(a)) for a in ineqs]
        eqs = [scale_to_int(tuple(e)) for e in eqs]
        rays, lin = dd_cone(dim_ambient, ineqs, eqs)
        pol_rays, pol_lin = dd_cone(dim_ambient, rays, lin)
        c_ineqs = tuple(r for r in pol_rays if not is_zero(r))
        return Cone(ambient, dim_ambient, rays, lin, c_ineqs, pol_lin)

    @property
    def dim(self):
        return self.dim_ambient - len(self.eqs)

    @property
    def is_pointed(self):
        return not self.lineality

    @property
    def is_full(self):
        return not self.eqs

    def contains(self, v):
        return all(dot(a, v) >= 0 for a in self.ineqs) and all(dot(e, v) == 0 for e in self.eqs)

    def contains_cone(self, other):
        gens = list(other.rays) + list(other.lineality) + [neg(l) for l in other.lineality]
        return all(self.contains(g) for g in gens)

    def intersect(self, other):
        _check_same_ambient(self, other)
        return Cone.from_ineqs(
            self.ambient, self.dim_ambient,
            self.ineqs + other.ineqs, self.eqs + other.eqs,
        )

    def dual(self):
        """The cone of linear forms nonnegative on self."""
        return Cone(f"{self.ambient}*", self.dim_ambient,
                    self.ineqs, self.eqs, self.rays, self.lineality)

    def facets(self):
        out = []
        for a in self.ineqs:
            out.append(Cone.from_ineqs(self.ambient, self.dim_ambient,
                                       self.ineqs, self.eqs + (a,)))
        return out

    def interior_dual_vector(self):
        """An integer form strictly positive on the cone away from its lineality."""
        if not self.ineqs:
            return tuple(0 for _ in range(self.dim_ambient))
        return tuple(sum(a[i] for a in self.ineqs) for i in range(self.dim_ambient))

    def relative_interior_point(self):
        return tuple(sum(r[i] for r in self.rays) for i in range(self.dim_ambient))

    def is_face_of(self, other):
        """True iff self is a face of other (the face-of relation, exact)."""
        if not other.contains_cone(self):
            return False
        tight = [a for a in other.ineqs
                 if all(dot(a, r) == 0 for r in self.rays)
                 and all(dot(a, l) == 0 for l in self.lineality)]
        face = Cone.from_ineqs(other.ambient, other.dim_ambient,
                               other.ineqs, other.eqs + tuple(tight))
        return face == self

    def common_face_with(self, other):
        """True iff self ∩ other is a face of both."""
        meet = self.intersect(other)
        return meet.is_face_of(self) and meet.is_face_of(other)

    def to_polyhedron(self):
        return Polyhedron.from_generators(
            self.ambient, self.dim_ambient,
            vertices=[tuple(0 for _ in range(self.dim_ambient))],
            rays=self.rays, lineality=self.lineality,
        )

    def to_json(self):
        return {
            "ambient": self.ambient,
            "rays": [list(r) for r in self.rays],
            "lineality": [list(l) for l in self.lineality],
            "halfspaces": [list(a) for a in self.ineqs],
            "equations": [list(e) for e in self.eqs],
        }


# ---------------------------------------------------------------------------
# polyhedra


EMPTY_MARK = "empty"


@dataclass(frozen=True)
class Polyhedron:
    """Rational polyhedron with canonical dual description.

    `ineqs` rows are (a_1,...,a_d, b) meaning a.x >= b, scaled to primitive
    integers; `eqs` rows likewise with a.x == b, in HNF.  The empty
    polyhedron has `empty=True` and no other data.
    """

    ambient: str
    dim_ambient: int
    empty: bool
    vertices: tuple = ()
    rays: tuple = ()
    lineality: tuple = ()
    ineqs: tuple = ()
    eqs: tuple = ()

    @staticmethod
    def empty_in(ambient, dim_ambient):
        return Polyhedron(ambient, dim_ambient, True)

    @staticmethod
    def from_halfspaces(ambient, dim_ambient, ineqs, eqs=()):
        """ineqs: (vector, offset) pairs with a.x >= b; eqs with a.x == b."""
        hom_ineqs = [_hom_row(a, b) for a, b in ineqs]
        hom_eqs = [_hom_row(a, b) for a, b in eqs]
        return _poly_from_hom(ambient, dim_ambient, hom_ineqs, hom_eqs)

    @staticmethod
    def from_generators(ambient, dim_ambient, vertices=(), rays=(), lineality=()):
        if not vertices:
            return Polyhedron.empty_in(ambient, dim_ambient)
        gens = [scale_to_int(tuple(v) + (1,)) for v in vertices]
        gens += [scale_to_int(tuple(r)) + (0,) for r in rays]
        lin = [scale_to_int(tuple(l)) + (0,) for l in lineality]
        pol_rays, pol_lin = dd_cone(dim_ambient + 1, gens, lin)
        hom_ineqs = [r for r in pol_rays if not is_zero(r[:-1])]
        hom_eqs = [r for r in pol_lin if not is_zero(r[:-1])]
        return _poly_from_hom(ambient, dim_ambient, hom_ineqs, hom_eqs)

    @property
    def dim(self):
        if self.empty:
            return -1
        return self.dim_ambient - len(self.eqs)

    @property
    def is_pointed(self):
        return not self.lineality

    def tail_cone(self):
        if self.empty:
            raise ValueError("empty polyhedron has no tail cone")
        return Cone.from_rays(self.ambient, self.dim_ambient, self.rays, self.lineality)

    def contains(self, x):
        if self.empty:
            return False
        return (all(dot(a[:-1], x) >= a[-1] for a in self.ineqs)
                and all(dot(e[:-1], x) == e[-1] for e in self.eqs))

    def translate(self, v):
        if self.empty:
            return self
        verts = [tuple(Fraction(a) + Fraction(b) for a, b in zip(vert, v)) for vert in self.vertices]
        return Polyhedron.from_generators(self.ambient, self.dim_ambient,
                                          verts, self.rays, self.lineality)

    def relative_interior_point(self):
        if self.empty:
            raise ValueError("empty polyhedron")
        k = len(self.vertices)
        pt = [Fraction(0)] * self.dim_ambient
        for v in self.vertices:
            for i, x in enumerate(v):
                pt[i] += Fraction(x, k)
        for r in self.rays:
            for i, x in enumerate(r):
                pt[i] += x
        return tuple(pt)

    def is_face_of(self, other):
        """True iff self is a (possibly empty, possibly improper) face of other."""
        if self.empty:
            return True
        gens_ok = (all(other.contains(v) for v in self.vertices)
                   and _cone_leq(self, other))
        if not gens_ok:
            return False
        tight = [a for a in other.ineqs if _tight_on(a, self)]
        face = _face_from_tight(other, tight)
        return face == self

    def common_face_with(self, other):
        meet = intersect(self, other)
        return meet.is_face_of(self) and meet.is_face_of(other)

    def to_json(self):
        if self.empty:
            return {"ambient": self.ambient, "empty": True}
        return {
            "ambient": self.ambient,
            "empty": False,
            "vertices": [[_frac_str(x) for x in v] for v in self.vertices],
            "rays": [list(r) for r in self.rays],
            "lineality": [list(l) for l in self.lineality],
            "halfspaces": [{"normal": list(a[:-1]), "offset": a[-1]} for a in self.ineqs],
            "equations": [{"normal": list(e[:-1]), "offset": e[-1]} for e in self.eqs],
        }


def _hom_row(a, b):
    """(a, b) with a.x >= b (or == b) into a homogeneous integer row (a, -b)."""
    return scale_to_int(tuple(a) + (-Fraction(b),))


def _poly_from_hom(ambient, dim_ambient, hom_ineqs, hom_eqs):
    last = tuple(0 for _ in range(dim_ambient)) + (1,)
    rays, lin = dd_cone(dim_ambient + 1, list(hom_ineqs) + [last], hom_eqs)
    verts = []
    tails = []
    for r in rays:
        if r[-1] > 0:
            verts.append(tuple(Fraction(x, r[-1]) for x in r[:-1]))
        else:
            tails.append(r[:-1])
    if not verts:
        return Polyhedron.empty_in(ambient, dim_ambient)
    lin_rows = tuple(l[:-1] for l in lin)
    # canonical H-description via the polar of the homogenisation cone;
    # a polar ray (a, c) means a.x + c*x0 >= 0, stored as a.x >= -c
    gens = [scale_to_int(v + (1,)) for v in verts]
    gens += [t + (0,) for t in tails]
    pol_rays, pol_lin = dd_cone(dim_ambient + 1, gens, [l + (0,) for l in lin_rows])
    ineqs = tuple(sorted(r[:-1] + (-r[-1],) for r in pol_rays if not is_zero(r[:-1])))
    eqs = tuple(r[:-1] + (-r[-1],) for r in pol_lin if not is_zero(r[:-1]))
    return Polyhedron(
        ambient, dim_ambient, False,
        vertices=tuple(sorted(verts)),
        rays=tuple(sorted(tails)),
        lineality=lin_rows,
        ineqs=ineqs,
        eqs=hnf_like_rows(eqs),
    )


def hnf_like_rows(rows):
    """Canonicalise equation rows (integer, primitive) by HNF of their span."""
    if not rows:
        return ()
    return hnf_rows(rows, len(rows[0]))


def _cone_leq(p, q):
    """tail(p) together with lineality contained in tail(q)+lineality(q)."""
    qtail = q.tail_cone()
    for r in p.rays:
        if not qtail.contains(r):
            return False
    for l in p.lineality:
        if not (qtail.contains(l) and qtail.contains(neg(l))):
            return False
    return True


def _tight_on(hom_row, poly):
    a, b = hom_row[:-1], hom_row[-1]
    return (all(dot(a, v) == b for v in poly.vertices)
            and all(dot(a, r) == 0 for r in poly.rays)
            and all(dot(a, l) == 0 for l in poly.lineality))


def _face_from_tight(poly, tight_rows):
    ineqs = [(r[:-1], r[-1]) for r in poly.ineqs]
    eqs = [(r[:-1], r[-1]) for r in poly.eqs] + [(r[:-1], r[-1]) for r in tight_rows]
    return Polyhedron.from_halfspaces(poly.ambient, poly.dim_ambient, ineqs, eqs)


# ---------------------------------------------------------------------------
# elementary operations


def dual_description(ambient, dim_ambient, vertices=None, rays=None, lineality=None,
                     ineqs=None, eqs=None):
    """Build a polyhedron from either description; both come out canonical."""
    from_v = vertices is not None or rays is not None or lineality is not None
    from_h = ineqs is not None or eqs is not None
    if from_v == from_h:
        raise ValueError("give exactly one of the two descriptions")
    if from_v:
        return Polyhedron.from_generators(ambient, dim_ambient,
                                          vertices or (), rays or (), lineality or ())
    return Polyhedron.from_halfspaces(ambient, dim_ambient, ineqs or (), eqs or ())


def minkowski_sum(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    _check_same_ambient(p, q)
    if p.empty or q.empty:
        raise ValueError("Minkowski sum needs nonempty summands")
    verts = [tuple(Fraction(a) + Fraction(b) for a, b in zip(v, w))
             for v in p.vertices for w in q.vertices]
    return Polyhedron.from_generators(p.ambient, p.dim_ambient, verts,
                                      p.rays + q.rays, p.lineality + q.lineality)


def min_value(p: Polyhedron, u):
    """Exact min of <x, u> over p, or None when unbounded below."""
    if p.empty:
        raise ValueError("empty polyhedron")
    if any(dot(l, u) != 0 for l in p.lineality):
        return None
    if any(dot(r, u) < 0 for r in p.rays):
        return None
    return min(dot(v, u) for v in p.vertices)


def face_minimizing(p: Polyhedron, u):
    """The face of p minimising the form u, or None when unbounded below."""
    m = min_value(p, u)
    if m is None:
        return None
    verts = [v for v in p.vertices if dot(v, u) == m]
    rays = [r for r in p.rays if dot(r, u) == 0]
    return Polyhedron.from_generators(p.ambient, p.dim_ambient, verts, rays, p.lineality)


def intersect(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    _check_same_ambient(p, q)
    if p.empty or q.empty:
        return Polyhedron.empty_in(p.ambient, p.dim_ambient)
    return Polyhedron.from_halfspaces(
        p.ambient, p.dim_ambient,
        [(r[:-1], r[-1]) for r in p.ineqs + q.ineqs],
        [(r[:-1], r[-1]) for r in p.eqs + q.eqs],
    )


def linear_image(p: Polyhedron, entries, codomain, dim_codomain) -> Polyhedron:
    """Image of p under the (rational) matrix acting on column vectors."""
    if p.empty:
        return Polyhedron.empty_in(codomain, dim_codomain)
    verts = [tuple(sum(Fraction(row[j]) * v[j] for j in range(len(v))) for row in entries)
             for v in p.vertices]
    rays = []
    for r in p.rays:
        img = tuple(sum(Fraction(row[j]) * r[j] for j in range(len(r))) for row in entries)
        if not is_zero(img):
            rays.append(scale_to_int(img))
    lin = []
    for l in p.lineality:
        img = tuple(sum(Fraction(row[j]) * l[j] for j in range(len(l))) for row in entries)
        if not is_zero(img):
            lin.append(scale_to_int(img))
    return Polyhedron.from_generators(codomain, dim_codomain, verts, rays, lin)


def map_image(p: Polyhedron, f) -> Polyhedron:
    """linear_image with domain/codomain tags taken from a LatticeMap/RationalMap."""
    if f.domain != p.ambient:
        raise LatticeMismatch(f"map domain {f.domain!r} does not match {p.ambient!r}")
    return linear_image(p, f.entries, f.codomain, f.rows)


def fiber_polyhedron(pi, c) -> Polyhedron:
    """pi^{-1}(c) ∩ nonnegative orthant in the domain of pi."""
    d = pi.cols
    unit = [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)]
    ineqs = [(u, 0) for u in unit]
    eqs = [(row, c[i]) for i, row in enumerate(pi.entries)]
    return Polyhedron.from_halfspaces(pi.domain, d, ineqs, eqs)


# ---------------------------------------------------------------------------
# fans and subdivisions


@dataclass(frozen=True)
class Fan:
    """Finite fan given by its maximal cones, labels kept in a fixed order."""

    ambient: str
    dim_ambient: int
    maximal: tuple  # of (label, Cone)

    def cones(self):
        return [c for _, c in self.maximal]

    def labels(self):
        return [l for l, _ in self.maximal]

    def rays(self):
        out = set()
        for _, c in self.maximal:
            out.update(c.rays)
        return tuple(sorted(out))

    def is_fan(self):
        cs = self.cones()
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                if not cs[i].common_face_with(cs[j]):
                    return False
        return True

    def is_complete(self):
        """Pure full-dimensional and every facet shared by exactly two cones.

        For a genuine fan this characterises completeness.
        """
        cs = self.cones()
        if not cs:
            return False
        if self.dim_ambient == 0:
            return True
        for c in cs:
            if c.dim != self.dim_ambient:
                return False
        walls = {}
        for idx, c in enumerate(cs):
            for f in c.facets():
                key = (f.rays, f.lineality)
                walls.setdefault(key, []).append(idx)
        return all(len(set(v)) == 2 for v in walls.values())

    def cone_containing(self, x):
        hits = [l for l, c in self.maximal if c.contains(x)]
        return hits

    def to_json(self):
        return {
            "ambient": self.ambient,
            "maximal_cones": [
                {"label": _label_json(l), "generators": [list(r) for r in c.rays],
                 "lineality": [list(v) for v in c.lineality]}
                for l, c in self.maximal
            ],
        }


@dataclass(frozen=True)
class Subdivision:
    """Polyhedral subdivision: labelled maximal cells plus a declared support.

    support None means all of the ambient space.
    """

    ambient: str
    dim_ambient: int
    cells: tuple            # of (label, Polyhedron)
    support: object = None  # Polyhedron or None

    def polyhedra(self):
        return [p for _, p in self.cells]

    def maximal_cells(self):
        """Distinct cells that are not proper faces of another cell.

        Several labels may repeat one cell, and a cell may be a face of a
        bigger one (charts of degenerate weight configurations do both); the
        complex is generated by the survivors.
        """
        reps = []
        for _, p in self.cells:
            if not p.empty and p not in reps:
                reps.append(p)
        out = []
        for p in reps:
            if not any(q != p and p.is_face_of(q) for q in reps):
                out.append(p)
        return out

    def check(self):
        """Verify the subdivision axioms; returns (ok, findings)."""
        findings = []
        if all(p.empty for _, p in self.cells):
            findings.append("no nonempty cells")
            return False, findings
        dim = self.dim_ambient if self.support is None else self.support.dim
        cells = list(enumerate(self.maximal_cells()))
        for i, p in cells:
            if p.dim != dim:
                findings.append(f"maximal cell {i} has dimension {p.dim}, expected {dim}")
            if self.support is not None and not _subset_of(p, self.support):
                findings.append(f"maximal cell {i} leaves the declared support")
        for i, pi_ in cells:
            for j, pj in cells:
                if j <= i:
                    continue
                meet = intersect(pi_, pj)
                if not meet.empty and meet.dim == dim:
                    findings.append(
                        f"cells {i} and {j} overlap in interiors; witness {_frac_point(meet)}")
                    continue
                if not (meet.is_face_of(pi_) and meet.is_face_of(pj)):
                    findings.append(f"cells {i} and {j} do not meet in a common face")
        findings.extend(self._coverage_findings(cells, dim))
        return not findings, findings

    def _coverage_findings(self, cells, dim):
        # every facet of every maximal cell must either be a wall shared with
        # another cell or lie in the boundary of the declared support
        findings = []
        for i, p in cells:
            for row in p.ineqs:
                facet = _face_from_tight(p, [row])
                if facet.empty or facet.dim != dim - 1:
                    continue
                shared = False
                for j, q in cells:
                    if q is p:
                        continue
                    meet = intersect(facet, q)
                    if meet == facet:
                        shared = True
                        break
                if shared:
                    continue
                if self.support is not None and _facet_on_boundary(facet, self.support):
                    continue
                findings.append(f"facet of cell {i} is uncovered (normal {row[:-1]})")
        return findings

    def to_json(self):
        return {
            "ambient": self.ambient,
            "cells": [{"label": _label_json(l), "polyhedron": p.to_json()} for l, p in self.cells],
            "support": None if self.support is None else self.support.to_json(),
        }


def _subset_of(p, q):
    return (all(q.contains(v) for v in p.vertices)
            and _cone_leq(p, q))


def _facet_on_boundary(facet, support):
    for row in support.ineqs:
        if _tight_on(row, facet):
            return True
    return False


def _frac_point(p):
    return [_frac_str(x) for x in p.relative_interior_point()]


def _label_json(label):
    if hasattr(label, "to_json"):
        return label.to_json()
    if isinstance(label, tuple):
        return list(label)
    return label


# ---------------------------------------------------------------------------
# coarsest common refinement (chamber fan of the image cones)


class RefinementGuardExceeded(RuntimeError):
    pass


def common_refinement_fan(pi, max_orthant_dim=16) -> Fan:
    """Complete fan refining the images of the orthant faces under pi.

    The chambers are cut out by every supporting hyperplane of every image
    cone; each maximal cone is labelled with the orthant faces (as index
    tuples) whose images contain it.  2^cols face images are enumerated, so
    the domain dimension is guarded.
    """
    l = pi.cols
    r = pi.rows
    if l > max_orthant_dim:
        raise RefinementGuardExceeded(
            f"{l} > {max_orthant_dim} orthant dimensions (override max_orthant_dim to force)")
    name = pi.codomain
    cols = [pi.column(j) for j in range(l)]
    images = {}
    for mask in range(1 << l):
        subset = tuple(i for i in range(l) if mask >> i & 1)
        cone = Cone.from_rays(name, r, [cols[i] for i in subset])
        images.setdefault(cone, []).append(subset)
    hyps = set()
    for cone in images:
        for a in cone.ineqs:
            hyps.add(sign_canonical(a))
        for e in cone.eqs:
            hyps.add(sign_canonical(e))
    hyps = sorted(h for h in hyps if not is_zero(h))

    cells = [Cone.from_ineqs(name, r, [])]
    for h in hyps:
        nxt = []
        for c in cells:
            plus = c.intersect(Cone.from_ineqs(name, r, [h]))
            minus = c.intersect(Cone.from_ineqs(name, r, [neg(h)]))
            if plus.dim == c.dim and minus.dim == c.dim and plus != minus:
                nxt.extend([plus, minus])
            else:
                nxt.append(c)
        cells = nxt

    labelled = []
    for c in sorted(cells, key=lambda c: (c.rays, c.lineality)):
        label = tuple(sorted(
            s for cone, subsets in images.items() if cone.contains_cone(c) for s in subsets))
        labelled.append((label, c))
    return Fan(name, r, tuple(labelled))


# ---------------------------------------------------------------------------
# regular subdivisions from heights


def induced_subdivision(ambient, points, heights) -> Subdivision:
    """Regular subdivision of conv(points) from the lower faces of the lift.

    Heights may be any rationals indexed like the points.  Cells are labelled
    by the sorted tuples of point indices they contain.
    """
    if len(points) != len(heights):
        raise ValueError("heights must be indexed by points")
    d = len(points[0])
    lifted = [tuple(p) + (Fraction(h),) for p, h in zip(points, heights)]
    up = tuple(0 for _ in range(d)) + (1,)
    lift = Polyhedron.from_generators(f"{ambient}^", d + 1, lifted, rays=[up])
    support = Polyhedron.from_generators(ambient, d, points)
    cells = []
    for row in lift.ineqs:
        a, b = row[:-1], row[-1]
        if a[-1] <= 0:
            continue  # only lower facets induce cells
        members = tuple(i for i, q in enumerate(lifted) if dot(a, q) == b)
        cell_pts = [points[i] for i in members]
        cells.append((members, Polyhedron.from_generators(ambient, d, cell_pts)))
    cells.sort(key=lambda t: t[0])
    return Subdivision(ambient, d, tuple(cells), support)
