import random
from fractions import Fraction as F

import pytest

from ppfan.chow import (
    boundary_face,
    build_setup,
    positive_fiber,
    pp_from_weights,
    projectivize,
)
from ppfan.divisors import Label, check_subdivision_structure, translate_coefficient
from ppfan.lattice import LatticeMap, identity_matrix, mat_mul, mat_vec
from ppfan.polyhedra import Polyhedron


def weighted_line_setup(a, b, A, B):
    """Rank-2 torus on affine 3-space, weights [a,1],[b,1],[0,1]; the classical
    worked family with its preferred section (-B,-A,0)."""
    deg = LatticeMap(((a, b, 0), (1, 1, 1)), "E", "M")
    return build_setup(deg, section=((-B,), (-A,), (0,)))


CASES = [(2, 1, 1, 1), (3, 1, 1, 2), (3, 2, 1, 1), (5, 3, 2, 3)]


@pytest.mark.parametrize("a,b,A,B", CASES)
def test_setup_pi_and_degree_element(a, b, A, B):
    assert A * a - B * b == 1
    setup = weighted_line_setup(a, b, A, B)
    assert setup.pi.entries == ((b, -a, a - b),)
    assert setup.degree_element == (0, 1)
    assert setup.saturated


@pytest.mark.parametrize("a,b,A,B", CASES)
def test_recipe_matches_displayed_formula(a, b, A, B):
    setup = weighted_line_setup(a, b, A, B)
    rec = pp_from_weights(setup)
    div = rec.divisor
    assert div.tail.rays == tuple(sorted([(-1, a), (1, 0)]))
    d0 = div.coefficient(Label.ray((1,), setup.pi.codomain))
    dinf = div.coefficient(Label.ray((-1,), setup.pi.codomain))
    v_new = (F(B - A, a - b), F(1, a - b))
    assert set(d0.vertices) == {v_new, (F(A, b), F(0))}
    assert dinf.vertices == ((F(-B, a), F(0)),)


@pytest.mark.parametrize("a,b,A,B", CASES)
def test_boundary_faces(a, b, A, B):
    setup = weighted_line_setup(a, b, A, B)
    rec = pp_from_weights(setup)
    lab0 = Label.ray((1,), setup.pi.codomain)
    labinf = Label.ray((-1,), setup.pi.codomain)
    assert boundary_face(setup, rec, labinf, 1).empty
    d00 = boundary_face(setup, rec, lab0, 0)
    assert d00.vertices == ((F(B - A, a - b), F(1, a - b)),)
    assert d00.rays == ((-1, a),)
    # fiber dimension: ambient coordinates minus the quotient rank
    assert rec.divisor.coefficient(lab0).dim == 3 - 1


def test_projectivized_cells_worked_example():
    setup = weighted_line_setup(2, 1, 1, 1)
    rec = pp_from_weights(setup)
    fansy = projectivize(setup, rec, target="N")
    lab0 = Label.ray((1,), setup.pi.codomain)
    labinf = Label.ray((-1,), setup.pi.codomain)
    by_key = dict(fansy.cells)
    assert by_key[0].coefficient(lab0) == Polyhedron.from_generators("N", 1, [(0,)], [(-1,)])
    assert by_key[0].coefficient(labinf) == Polyhedron.from_generators("N", 1, [(F(-1, 2),)], [(-1,)])
    assert by_key[1].coefficient(lab0) == Polyhedron.from_generators("N", 1, [(0,), (1,)])
    assert by_key[1].coefficient(labinf).empty
    assert by_key[2].coefficient(lab0) == Polyhedron.from_generators("N", 1, [(1,)], [(1,)])
    assert by_key[2].coefficient(labinf) == Polyhedron.from_generators("N", 1, [(F(-1, 2),)], [(1,)])
    assert check_subdivision_structure(fansy).passed


def test_boundary_union_covers_relative_boundary():
    # the union of the projected boundary faces per label covers the line
    setup = weighted_line_setup(3, 2, 1, 1)
    fansy = projectivize(setup, pp_from_weights(setup))
    for label in fansy.labels:
        ok, findings = fansy.subdivision_for(label).check()
        assert ok, findings


def test_build_setup_rejects_rank_deficient():
    with pytest.raises(ValueError):
        build_setup(LatticeMap(((1, 2), (2, 4)), "E", "M"))


def test_identity_weights_degenerate():
    setup = build_setup(LatticeMap(identity_matrix(3), "E", "M"))
    assert setup.pi.rows == 0
    with pytest.raises(ValueError):
        pp_from_weights(setup)


def test_custom_section_validated():
    deg = LatticeMap(((2, 1, 0), (1, 1, 1)), "E", "M")
    with pytest.raises(ValueError):
        build_setup(deg, section=((1,), (1,), (0,)))


def test_no_degree_element_blocks_projectivize():
    setup = build_setup(LatticeMap(((1, 0, 1), (0, 2, 1)), "E", "M"))
    assert setup.degree_element is None
    rec = pp_from_weights(setup)
    with pytest.raises(ValueError):
        projectivize(setup, rec)


def test_plucker_setup_is_overlattice():
    from ppfan.grassmann import plucker_degree_map
    from ppfan.lattice import smith_normal_form
    deg = plucker_degree_map(4)
    setup = build_setup(deg)
    assert not setup.saturated
    _, S, _ = smith_normal_form(deg.entries)
    divisors = [S[i][i] for i in range(4)]
    assert divisors == [1, 1, 1, 2]  # image has index two
    assert setup.degree_element is not None
    # the degree element doubles to the diagonal pairing vector
    doubled = setup.dstar.apply(tuple(2 * x for x in setup.degree_element))
    assert doubled == tuple(2 for _ in range(6))


def _random_projective_setup(rng):
    while True:
        cols = rng.randint(3, 4)
        top = tuple(rng.randint(-2, 2) for _ in range(cols))
        deg = LatticeMap((top, tuple(1 for _ in range(cols))), "E", "M")
        if deg.rank() == 2:
            return build_setup(deg)


def test_section_independence_randomized():
    rng = random.Random(77)
    cases = 0
    while cases < 25:
        setup = _random_projective_setup(rng)
        try:
            rec1 = pp_from_weights(setup)
        except ValueError:
            continue
        cases += 1
        # second section: shift the first by something in the dual image
        R = tuple(tuple(rng.randint(-2, 2) for _ in range(setup.pi.rows))
                  for _ in range(setup.dstar.cols))
        shift = mat_mul(setup.dstar.entries, R)
        s2 = tuple(tuple(a + b for a, b in zip(r1, r2))
                   for r1, r2 in zip(setup.section.entries, shift))
        setup2 = build_setup(setup.deg, section=s2)
        rec2 = pp_from_weights(setup2, rays=[c for _, c in rec1.rays])
        for label, c in rec1.rays:
            delta = tuple(-x for x in mat_vec(R, c))
            moved = translate_coefficient(rec1.divisor, label, delta)
            assert moved.coefficient(label) == rec2.divisor.coefficient(label)


def test_two_sections_differ_by_translation():
    # the canonical section and the worked example's one give coefficients
    # that agree after the predicted per-ray shift
    deg = LatticeMap(((2, 1, 0), (1, 1, 1)), "E", "M")
    setup_canon = build_setup(deg)
    setup_paper = build_setup(deg, section=((-1,), (-1,), (0,)))
    rec1 = pp_from_weights(setup_canon)
    rec2 = pp_from_weights(setup_paper, rays=[c for _, c in rec1.rays])
    from ppfan.lattice import rational_left_inverse
    T = rational_left_inverse(setup_canon.dstar.entries)
    for label, c in rec1.rays:
        diff = tuple(a - b for a, b in
                     zip(setup_canon.section.apply(c), setup_paper.section.apply(c)))
        shift = mat_vec(T, diff)
        moved = translate_coefficient(rec1.divisor, label, shift)
        assert moved.coefficient(label) == rec2.divisor.coefficient(label)


def test_ray_missing_orthant_image_rejected():
    # weights with a one-sided quotient image: the opposite ray has no fiber
    deg = LatticeMap(((1, -1),), "E", "M")
    setup = build_setup(deg)
    assert setup.pi.entries == ((1, 1),)
    pp_from_weights(setup, rays=[(1,)])
    with pytest.raises(ValueError):
        pp_from_weights(setup, rays=[(-1,)])


def test_fibers_are_cached():
    setup = weighted_line_setup(2, 1, 1, 1)
    f1 = positive_fiber(setup.pi, (1,))
    f2 = positive_fiber(setup.pi, (1,))
    assert f1 is f2
