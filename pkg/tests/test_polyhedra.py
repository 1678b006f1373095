import random
from fractions import Fraction as F

import pytest

from ppfan.lattice import LatticeMap
from ppfan.polyhedra import (
    Cone,
    Polyhedron,
    RefinementGuardExceeded,
    common_refinement_fan,
    dual_description,
    face_minimizing,
    fiber_polyhedron,
    induced_subdivision,
    intersect,
    linear_image,
    min_value,
    minkowski_sum,
)

from oracles import brute_min, brute_rays, brute_vertices


def poly_H(ineqs, eqs=(), d=2, name="Q"):
    return Polyhedron.from_halfspaces(name, d, ineqs, eqs)


def poly_V(verts, rays=(), lin=(), d=2, name="Q"):
    return Polyhedron.from_generators(name, d, verts, rays, lin)


# --- dual description ------------------------------------------------------

def test_simplex_from_H():
    p = poly_H([((1, 0), 0), ((0, 1), 0), ((-1, -1), -1)])
    assert p.vertices == ((F(0), F(0)), (F(0), F(1)), (F(1), F(0)))
    assert p.rays == ()


def test_fiber_slice_from_H():
    p = poly_H([((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0)],
               eqs=[((1, -2, 1), 1)], d=3)
    assert p.vertices == ((F(0), F(0), F(1)), (F(1), F(0), F(0)))
    assert p.rays == ((0, 1, 2), (2, 1, 0))


def test_inconsistent_H_is_empty():
    p = poly_H([((1,), 1), ((-1,), 0)], d=1)
    assert p.empty
    assert p == Polyhedron.empty_in("Q", 1)


def test_dual_description_dispatch():
    p = dual_description("Q", 2, vertices=[(0, 0), (1, 0)])
    q = dual_description("Q", 2, ineqs=[(r[:-1], r[-1]) for r in p.ineqs],
                         eqs=[(r[:-1], r[-1]) for r in p.eqs])
    assert p == q
    with pytest.raises(ValueError):
        dual_description("Q", 2)


def test_roundtrip_randomized():
    rng = random.Random(3)
    for _ in range(150):
        d = rng.randint(1, 3)
        verts = [tuple(F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(d))
                 for _ in range(rng.randint(1, 4))]
        rays = [tuple(rng.randint(-2, 2) for _ in range(d)) for _ in range(rng.randint(0, 2))]
        rays = [r for r in rays if any(r)]
        p = poly_V(verts, rays, d=d)
        q = poly_V(p.vertices, p.rays, p.lineality, d=d)
        r = poly_H([(row[:-1], row[-1]) for row in p.ineqs],
                   [(row[:-1], row[-1]) for row in p.eqs], d=d)
        assert p == q == r


def test_vertices_match_brute_force():
    rng = random.Random(4)
    for _ in range(80):
        d = rng.randint(2, 3)
        ineqs = [(tuple(rng.randint(-3, 3) for _ in range(d)), rng.randint(-2, 2))
                 for _ in range(rng.randint(d, 6))]
        p = poly_H(ineqs, d=d)
        expect_v = brute_vertices(ineqs, [], d)
        if p.empty:
            assert expect_v == []
            continue
        if p.lineality:
            continue  # brute oracle only handles pointed polyhedra
        assert list(p.vertices) == expect_v
        assert list(p.rays) == brute_rays(ineqs, [], d)


def test_vertices_match_brute_force_with_equations():
    rng = random.Random(14)
    for _ in range(80):
        d = 3
        ineqs = [(tuple(rng.randint(-3, 3) for _ in range(d)), rng.randint(-2, 2))
                 for _ in range(rng.randint(2, 5))]
        eqs = [(tuple(rng.randint(-2, 2) for _ in range(d)), rng.randint(-1, 1))]
        p = poly_H(ineqs, eqs, d=d)
        expect_v = brute_vertices(ineqs, eqs, d)
        if p.empty:
            assert expect_v == []
            continue
        if p.lineality:
            continue
        assert list(p.vertices) == expect_v
        assert list(p.rays) == brute_rays(ineqs, eqs, d)


# --- minkowski sums --------------------------------------------------------

def test_minkowski_neutral_element():
    p = poly_V([(0, 1), (2, 0)], rays=[(1, 1)])
    zero = poly_V([(0, 0)])
    assert minkowski_sum(p, zero) == p


def test_minkowski_segment_plus_cone():
    seg = poly_V([(0, 1), (1, 0)])
    cone = poly_V([(0, 0)], rays=[(1, 0), (-1, 2)])
    s = minkowski_sum(seg, cone)
    assert s.vertices == ((F(0), F(1)), (F(1), F(0)))
    assert s.rays == ((-1, 2), (1, 0))


def test_minkowski_cone_idempotent():
    cone = poly_V([(0, 0)], rays=[(1, 0), (1, 2)])
    assert minkowski_sum(cone, cone) == cone


def test_minkowski_rejects_empty():
    with pytest.raises(ValueError):
        minkowski_sum(poly_V([(0, 0)]), Polyhedron.empty_in("Q", 2))


def test_minkowski_assoc_comm_randomized():
    rng = random.Random(11)
    for _ in range(60):
        ps = [poly_V([tuple(rng.randint(-3, 3) for _ in range(2)) for _ in range(rng.randint(1, 3))],
                     rays=[r for r in [tuple(rng.randint(-1, 1) for _ in range(2))] if any(r)])
              for _ in range(3)]
        a, b, c = ps
        assert minkowski_sum(a, b) == minkowski_sum(b, a)
        assert minkowski_sum(minkowski_sum(a, b), c) == minkowski_sum(a, minkowski_sum(b, c))


# --- faces and minima ------------------------------------------------------

def test_face_of_square():
    sq = poly_V([(0, 0), (1, 0), (0, 1), (1, 1)])
    f = face_minimizing(sq, (1, 0))
    assert f.vertices == ((F(0), F(0)), (F(0), F(1)))


def test_face_compact_edge():
    d0 = poly_V([(0, 1), (1, 0)], rays=[(1, 0), (-1, 2)])
    f = face_minimizing(d0, (1, 1))
    assert f.vertices == ((F(0), F(1)), (F(1), F(0))) and f.rays == ()


def test_face_unbounded_signal():
    h = poly_V([(0, 0)], rays=[(1, 0)])
    assert face_minimizing(h, (-1, 0)) is None
    assert min_value(h, (-1, 0)) is None


def test_min_values():
    sq = poly_V([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert min_value(sq, (1, 1)) == 0
    dinf = poly_V([(F(-1, 2), 0)], rays=[(1, 0), (-1, 2)])
    assert min_value(dinf, (2, 1)) == -1
    with pytest.raises(ValueError):
        min_value(Polyhedron.empty_in("Q", 2), (1, 0))


def test_face_compact_for_interior_dual_forms():
    rng = random.Random(61)
    for _ in range(60):
        verts = [tuple(rng.randint(-3, 3) for _ in range(2)) for _ in range(rng.randint(1, 3))]
        rays = [r for r in (tuple(rng.randint(-2, 2) for _ in range(2)) for _ in range(2)) if any(r)]
        p = poly_V(verts, rays)
        if p.lineality:
            continue
        tail = p.tail_cone()
        u = tuple(sum(a[i] for a in tail.ineqs) for i in range(2))
        if any(sum(a * b for a, b in zip(r, u)) <= 0 for r in p.rays):
            continue  # u not interior to the dual of the tail
        f = face_minimizing(p, u)
        assert f is not None and f.rays == () and f.lineality == ()


def test_fiber_recession_cone_is_kernel_meet_orthant():
    from ppfan.polyhedra import Cone
    pi = LatticeMap(((1, -2, 1),), "E", "N")
    f = fiber_polyhedron(pi, (1,))
    unit = [tuple(1 if j == i else 0 for j in range(3)) for i in range(3)]
    want = Cone.from_ineqs("E", 3, unit, pi.entries)
    assert f.tail_cone() == want


def test_face_is_subset_and_attains_min():
    rng = random.Random(21)
    for _ in range(60):
        verts = [tuple(rng.randint(-3, 3) for _ in range(2)) for _ in range(rng.randint(1, 4))]
        p = poly_V(verts)
        u = (rng.randint(-3, 3), rng.randint(-3, 3))
        f = face_minimizing(p, u)
        m = min_value(p, u)
        assert f.is_face_of(p)
        assert all(sum(a * b for a, b in zip(v, u)) == m for v in f.vertices)
        assert m == brute_min(p.vertices, p.rays, u)


# --- intersections ---------------------------------------------------------

def test_intersect_self():
    p = poly_V([(0, 0), (1, 2)], rays=[(1, 0)])
    assert intersect(p, p) == p


def test_intersect_intervals():
    a = poly_V([(0,), (2,)], d=1)
    b = poly_V([(1,), (3,)], d=1)
    assert intersect(a, b).vertices == ((F(1),), (F(2),))


def test_intersect_grass_tail_cones():
    # adjacent sign-pattern cones meet in the face spanned by the two common rays
    from ppfan.grassmann import tail_fan
    fan = tail_fan(2, 4)
    c12 = dict(fan.maximal)[(1, 2)]
    c13 = dict(fan.maximal)[(1, 3)]
    meet = c12.intersect(c13)
    want = Cone.from_rays("Lstar(4)", 3, [(-1, 0, 0), (-1, -1, -1)])
    assert meet == want
    assert meet.dim == 2 and meet.is_face_of(c12) and meet.is_face_of(c13)


def test_lattice_mismatch_raises():
    a = poly_V([(0, 0)], name="A")
    b = poly_V([(0, 0)], name="B")
    with pytest.raises(ValueError):
        intersect(a, b)


# --- images and fibers -----------------------------------------------------

def test_image_identity_and_empty():
    p = poly_V([(0, 1), (1, 0)], rays=[(1, 1)])
    assert linear_image(p, ((1, 0), (0, 1)), "Q", 2) == p
    assert linear_image(Polyhedron.empty_in("Q", 2), ((1, 0),), "R", 1).empty


def test_image_projection_of_boundary_face():
    f = poly_V([(0, 1)], rays=[(-1, 2)])
    img = linear_image(f, ((1, 0),), "R", 1)
    assert img.vertices == ((F(0),),) and img.rays == ((-1,),)


def test_fiber_point():
    pi = LatticeMap(((1, 0), (0, 1)), "E", "N")
    f = fiber_polyhedron(pi, (1, 1))
    assert f.vertices == ((F(1), F(1)),) and f.rays == ()


def test_fiber_properties_randomized():
    rng = random.Random(31)
    done = 0
    while done < 40:
        rows = tuple(tuple(rng.randint(-2, 2) for _ in range(4)) for _ in range(2))
        pi = LatticeMap(rows, "E", "N")
        if pi.rank() != 2:
            continue
        done += 1
        c = (rng.randint(-2, 2), rng.randint(-2, 2))
        f = fiber_polyhedron(pi, c)
        if f.empty:
            continue
        for v in f.vertices:
            assert pi.apply(v) == tuple(F(x) for x in c) or pi.apply(v) == c
            assert all(x >= 0 for x in v)
        for r in f.rays:
            assert all(x == 0 for x in pi.apply(r))
            assert all(x >= 0 for x in r)


# --- refinement fan --------------------------------------------------------

def test_refinement_identity_quadrants():
    fan = common_refinement_fan(LatticeMap(((1, 0), (0, 1)), "E", "N"))
    assert len(fan.maximal) == 4
    assert fan.is_complete() and fan.is_fan()


def test_refinement_row_map():
    fan = common_refinement_fan(LatticeMap(((1, -2, 1),), "E", "N"))
    assert fan.rays() == ((-1,), (1,))
    assert len(fan.maximal) == 2


def test_refinement_guard():
    wide = LatticeMap((tuple(1 for _ in range(17)),), "E", "N")
    with pytest.raises(RefinementGuardExceeded):
        common_refinement_fan(wide)
    common_refinement_fan(wide, max_orthant_dim=17)


def test_refinement_point_location_randomized():
    rng = random.Random(41)
    pi = LatticeMap(((1, -1, 0, 2), (0, 1, 1, -1)), "E", "N")
    fan = common_refinement_fan(pi)
    assert fan.is_complete()
    for _ in range(200):
        x = (F(rng.randint(-9, 9), rng.randint(1, 5)), F(rng.randint(-9, 9), rng.randint(1, 5)))
        hits = [c for _, c in fan.maximal if c.contains(x)]
        assert len(hits) >= 1
        interior = [c for c in hits
                    if all(sum(a * b for a, b in zip(row, x)) > 0 for row in c.ineqs)]
        if interior:
            assert len(hits) == 1


# --- induced subdivisions --------------------------------------------------

def test_trivial_heights():
    pts = [(0, 0), (1, 0), (0, 1), (1, 1)]
    sub = induced_subdivision("Q", pts, [0, 0, 0, 0])
    assert [m for m, _ in sub.cells] == [(0, 1, 2, 3)]
    assert sub.check()[0]


def test_generic_square_heights():
    pts = [(0, 0), (1, 0), (0, 1), (1, 1)]
    sub = induced_subdivision("Q", pts, [0, 0, 0, -1])
    assert {m for m, _ in sub.cells} == {(0, 1, 3), (0, 2, 3)}
    assert sub.check()[0]


def test_hypersimplex_partition_heights():
    from ppfan.grassmann import pair_vector, pairs
    pts = [tuple(1 if k in (i, j) else 0 for k in range(1, 5)) for i, j in pairs(4)]
    heights = pair_vector(4, (1, 2))
    sub = induced_subdivision("W", pts, heights)
    got = {frozenset(m) for m, _ in sub.cells}
    part, comp = {1, 2}, {3, 4}
    c1 = frozenset(i for i, (a, b) in enumerate(pairs(4)) if a in part or b in part)
    c2 = frozenset(i for i, (a, b) in enumerate(pairs(4)) if a in comp or b in comp)
    assert got == {c1, c2}
    ok, findings = sub.check()
    assert ok, findings


def test_lift_independence():
    rng = random.Random(51)
    pts = [(0, 0), (2, 0), (0, 2), (1, 1), (2, 2)]
    for _ in range(40):
        heights = [rng.randint(-3, 3) for _ in pts]
        w = (rng.randint(-3, 3), rng.randint(-3, 3))
        c = rng.randint(-3, 3)
        shifted = [h + sum(a * b for a, b in zip(p, w)) + c for h, p in zip(heights, pts)]
        s1 = induced_subdivision("Q", pts, heights)
        s2 = induced_subdivision("Q", pts, shifted)
        assert [m for m, _ in s1.cells] == [m for m, _ in s2.cells]


def test_heights_length_checked():
    with pytest.raises(ValueError):
        induced_subdivision("Q", [(0, 0)], [1, 2])
