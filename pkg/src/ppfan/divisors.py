"""Polyhedral divisors over abstract prime-divisor labels.

A divisor here is a formal sum of polyhedron coefficients (sharing one tail
cone, empty allowed) over labels; a family of such divisors with a common
label set whose coefficients tile the space per label is the "fansy" divisor
describing a non-affine torus variety.  The two checks at the bottom verify
the combinatorial axioms of that picture; the geometric conditions living on
the base variety itself (semiampleness of the locus divisors) are out of
reach of pure combinatorics and are reported as assumptions, not checked.
"""

from dataclasses import dataclass
from fractions import Fraction

from ._vecops import dot, neg, primitive
from .polyhedra import (
    Cone,
    Fan,
    Polyhedron,
    Subdivision,
    _check_same_ambient,
    intersect,
    min_value,
)


@dataclass(frozen=True, order=True)
class Label:
    """Prime divisor label: a toric ray, a partition, or a bare name."""

    kind: str
    value: tuple

    @staticmethod
    def ray(vec, lattice=""):
        return Label("ray", (lattice, primitive(tuple(int(x) for x in vec))))

    @staticmethod
    def partition(part, n):
        part = tuple(sorted(part))
        if 1 not in part:
            raise ValueError("canonical partition part must contain 1")
        return Label("partition", (n, part))

    @staticmethod
    def named(name):
        return Label("named", (str(name),))

    def to_json(self):
        if self.kind == "ray":
            return {"ray": list(self.value[1]), "lattice": self.value[0]}
        if self.kind == "partition":
            return {"partition": list(self.value[1])}
        return {"name": self.value[0]}


@dataclass(frozen=True)
class PPDivisor:
    """Formal sum of polyhedron coefficients over distinct labels.

    All nonempty coefficients must share the stated tail cone, and at least
    one coefficient must be nonempty (otherwise the tail would be ambiguous).
    Terms are kept sorted by label.
    """

    ambient: str
    dim_ambient: int
    tail: Cone
    terms: tuple  # of (Label, Polyhedron)

    def __post_init__(self):
        terms = tuple(sorted(self.terms, key=lambda t: t[0]))
        object.__setattr__(self, "terms", terms)
        labels = [l for l, _ in terms]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate divisor labels")
        nonempty = [p for _, p in terms if not p.empty]
        if not nonempty:
            raise ValueError("need at least one nonempty coefficient")
        for l, p in terms:
            if p.empty:
                continue
            if p.ambient != self.ambient:
                raise ValueError(f"coefficient at {l} lives in {p.ambient!r}, not {self.ambient!r}")
            if p.tail_cone() != self.tail:
                raise ValueError(f"coefficient at {l} has a different tail cone")

    def labels(self):
        return tuple(l for l, _ in self.terms)

    def coefficient(self, label):
        for l, p in self.terms:
            if l == label:
                return p
        raise KeyError(label)

    def empty_locus(self):
        return tuple(l for l, p in self.terms if p.empty)

    def to_json(self):
        return {
            "ambient": self.ambient,
            "tail": self.tail.to_json(),
            "terms": [
                {"label": l.to_json(),
                 "polyhedron": "empty" if p.empty else p.to_json()}
                for l, p in self.terms
            ],
        }


@dataclass(frozen=True)
class FormalDivisor:
    """Rational formal sum over labels, the result of evaluating a PPDivisor."""

    terms: tuple              # of (Label, Fraction)
    omitted: tuple = ()       # labels skipped because their coefficient was empty

    def coefficient(self, label):
        for l, c in self.terms:
            if l == label:
                return c
        raise KeyError(label)

    def to_json(self):
        out = {"terms": [{"label": l.to_json(), "coefficient": _frac_str(c)} for l, c in self.terms]}
        if self.omitted:
            out["omitted"] = [l.to_json() for l in self.omitted]
        return out


def _frac_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def evaluate(divisor: PPDivisor, u) -> FormalDivisor:
    """Σ min<coefficient, u> per label; u must be nonnegative on the tail cone."""
    tail = divisor.tail
    if any(dot(r, u) < 0 for r in tail.rays) or any(dot(l, u) != 0 for l in tail.lineality):
        raise ValueError("form is not in the dual of the tail cone")
    terms = []
    omitted = []
    for l, p in divisor.terms:
        if p.empty:
            omitted.append(l)
            continue
        m = min_value(p, u)
        assert m is not None  # guaranteed by the tail check
        terms.append((l, Fraction(m)))
    return FormalDivisor(tuple(terms), tuple(omitted))


def intersect_pp(d1: PPDivisor, d2: PPDivisor) -> PPDivisor:
    """Label-wise intersection; empty coefficients appear naturally here."""
    _check_same_ambient(d1, d2)
    if d1.labels() != d2.labels():
        raise ValueError("label sets differ")
    tail = d1.tail.intersect(d2.tail)
    terms = [(l, intersect(p, d2.coefficient(l))) for l, p in d1.terms]
    return PPDivisor(d1.ambient, d1.dim_ambient, tail, tuple(terms))


def translate_coefficient(divisor: PPDivisor, label, v) -> PPDivisor:
    """Translate one coefficient by the vector v; the tail is unchanged."""
    if label not in divisor.labels():
        raise KeyError(label)
    terms = [(l, p.translate(v) if l == label and not p.empty else p)
             for l, p in divisor.terms]
    return PPDivisor(divisor.ambient, divisor.dim_ambient, divisor.tail, tuple(terms))


@dataclass(frozen=True)
class FansyDivisor:
    """Indexed family of PPDivisors with one global label set."""

    ambient: str
    dim_ambient: int
    labels: tuple   # of Label
    cells: tuple    # of (cell_key, PPDivisor)

    def __post_init__(self):
        labels = tuple(sorted(self.labels))
        object.__setattr__(self, "labels", labels)
        for key, d in self.cells:
            if d.labels() != labels:
                raise ValueError(f"cell {key!r} does not carry the global label set")
            if d.ambient != self.ambient:
                raise ValueError(f"cell {key!r} lives in {d.ambient!r}")

    def cell(self, key):
        for k, d in self.cells:
            if k == key:
                return d
        raise KeyError(key)

    def subdivision_for(self, label) -> Subdivision:
        cells = tuple((k, d.coefficient(label)) for k, d in self.cells)
        return Subdivision(self.ambient, self.dim_ambient, cells)

    def tail_fan(self) -> Fan:
        seen = []
        for k, d in self.cells:
            if not any(d.tail == c for _, c in seen):
                seen.append((k, d.tail))
        maximal = [(k, c) for k, c in seen
                   if not any(c is not c2 and c2.contains_cone(c) for _, c2 in seen)]
        return Fan(self.ambient, self.dim_ambient, tuple(maximal))

    def to_json(self):
        return {
            "ambient": self.ambient,
            "labels": [l.to_json() for l in self.labels],
            "cells": [{"cell": _key_json(k), "divisor": d.to_json()} for k, d in self.cells],
        }


def _key_json(key):
    if isinstance(key, tuple):
        return list(key)
    return key


@dataclass(frozen=True)
class Report:
    passed: bool
    findings: tuple

    def to_json(self):
        return {"pass": self.passed, "findings": list(self.findings)}


def check_subdivision_structure(fansy: FansyDivisor) -> Report:
    """Subdivision axioms per label, plus the tails forming a fan."""
    findings = []
    for label in fansy.labels:
        ok, cell_findings = fansy.subdivision_for(label).check()
        if not ok:
            findings.extend(f"label {label}: {f}" for f in cell_findings)
    tails = []
    for k, d in fansy.cells:
        if not any(d.tail == c for _, c in tails):
            tails.append((k, d.tail))
    for i in range(len(tails)):
        for j in range(i + 1, len(tails)):
            if not tails[i][1].common_face_with(tails[j][1]):
                findings.append(
                    f"tail cones of cells {tails[i][0]!r} and {tails[j][0]!r} do not meet in a common face")
    return Report(not findings, tuple(findings))


def check_fansy_condition1(fansy: FansyDivisor) -> Report:
    """Search separating forms for every cell pair (sound but incomplete).

    Candidates are 0 and the primitive facet normals of the coefficients.
    A returned witness is verified exactly; not finding one is recorded as
    inconclusive, never as a refutation.  The locus condition on the base
    variety is reported as an assumption.
    """
    findings = []
    verified = 0
    inconclusive = 0
    for a, (mu, dmu) in enumerate(fansy.cells):
        for nu, dnu in fansy.cells[a:]:
            u = _find_separating_form(dmu, dnu)
            assumed = [str(l) for l in dmu.labels()
                       if intersect_or_empty(dmu.coefficient(l), dnu.coefficient(l)).empty]
            if u is None:
                inconclusive += 1
                findings.append(f"pair ({mu!r}, {nu!r}): inconclusive (no candidate form worked)")
            else:
                verified += 1
                findings.append(f"pair ({mu!r}, {nu!r}): verified with form {u}; "
                                f"assumed semiample locus {assumed}")
    return Report(inconclusive == 0, tuple(findings))


def intersect_or_empty(p, q):
    if p.empty or q.empty:
        return Polyhedron.empty_in(p.ambient, p.dim_ambient)
    return intersect(p, q)


def _level_set(p, u, c):
    if p.empty:
        return p
    return Polyhedron.from_halfspaces(
        p.ambient, p.dim_ambient,
        [(r[:-1], r[-1]) for r in p.ineqs],
        [(r[:-1], r[-1]) for r in p.eqs] + [(u, c)],
    )


def _pair_ok(dmu, dnu, u):
    for l, pmu in dmu.terms:
        pnu = dnu.coefficient(l)
        if pmu.empty and pnu.empty:
            continue
        if pmu.empty:
            mn = min_value(pnu, u)
            if mn is None:
                return False
            continue  # any c < mn gives empty level sets on both sides
        if pnu.empty:
            mx = _max_value(pmu, u)
            if mx is None:
                return False
            continue
        mx = _max_value(pmu, u)
        mn = min_value(pnu, u)
        if mx is None or mn is None or mx > mn:
            return False
        if mx == mn and _level_set(pmu, u, mx) != _level_set(pnu, u, mn):
            return False
    return True


def _max_value(p, u):
    m = min_value(p, neg(u))
    return None if m is None else -m


def _find_separating_form(dmu, dnu):
    # candidates: 0, facet normals of all coefficients, and the interior dual
    # vectors of the two tail cones (which separate opposite cells)
    zero = tuple(0 for _ in range(dmu.dim_ambient))
    candidates = [zero]
    seen = {zero}

    def push(vec):
        for cand in (primitive(vec), primitive(neg(vec))):
            if cand not in seen:
                seen.add(cand)
                candidates.append(cand)

    for d in (dmu, dnu):
        for _, p in d.terms:
            if p.empty:
                continue
            for row in p.ineqs:
                push(row[:-1])
        if d.tail.ineqs:
            push(d.tail.interior_dual_vector())
    if dmu.tail.ineqs and dnu.tail.ineqs:
        push(tuple(a - b for a, b in zip(dnu.tail.interior_dual_vector(),
                                         dmu.tail.interior_dual_vector())))
    for u in candidates:
        if _pair_ok(dmu, dnu, u):
            return u
    return None


def fansy_equal(f1: FansyDivisor, f2: FansyDivisor):
    """Geometric equality of two fansy divisors, up to renaming the cells.

    Matches cells by exact equality of all their coefficients; returns
    (True, bijection dict) or (False, reason).
    """
    if f1.ambient != f2.ambient:
        return False, f"ambient lattices differ: {f1.ambient!r} vs {f2.ambient!r}"
    if f1.labels != f2.labels:
        return False, "label sets differ"
    if len(f1.cells) != len(f2.cells):
        return False, f"cell counts differ: {len(f1.cells)} vs {len(f2.cells)}"
    matching = {}
    used = set()
    for k1, d1 in f1.cells:
        hits = [k2 for k2, d2 in f2.cells
                if all(d1.coefficient(l) == d2.coefficient(l) for l in f1.labels)]
        if len(hits) != 1:
            return False, f"cell {k1!r} matches {len(hits)} cells on the other side"
        if hits[0] in used:
            return False, f"cell {hits[0]!r} matched twice"
        used.add(hits[0])
        matching[k1] = hits[0]
    return True, matching
