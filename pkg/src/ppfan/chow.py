"""From a weight matrix to the divisor of the affine cone and its projectivization.

The pipeline: a weight matrix (columns = weights of the ambient coordinates)
determines two exact sequences; the dual one fixes a projection `pi` of the
coordinate exponent lattice onto the lattice where the Chow fan lives.  Each
ray of that fan carries the fiber of `pi` over it intersected with the
nonnegative orthant, shifted into the dual weight space either by an integral
section of `pi` or by a rational retraction of the dual embedding.  Boundary
faces of those coefficients, projected along the degree direction, assemble
the divisor family of the projectivized variety.
"""

import functools
from dataclasses import dataclass
from fractions import Fraction

from ._vecops import scale_to_int
from .divisors import FansyDivisor, Label, PPDivisor, check_subdivision_structure
from .lattice import (
    LatticeMap,
    RationalMap,
    check_retraction,
    integral_section,
    kernel_basis,
    mat_mul,
    quotient_projection,
    rational_left_inverse,
    rational_solve,
    smith_normal_form,
    transpose,
)
from .polyhedra import (
    Cone,
    Polyhedron,
    common_refinement_fan,
    face_minimizing,
    fiber_polyhedron,
    map_image,
    min_value,
)


@dataclass(frozen=True)
class WeightSetup:
    """The two exact sequences derived from a weight matrix.

    `dstar` embeds the dual weight lattice into the exponent lattice; when
    the weights span their codomain honestly it is the literal transpose of
    `deg`, otherwise the canonical HNF basis of the saturated kernel of `pi`
    (the dual lattice is then an overlattice of the naive dual).
    """

    deg: LatticeMap
    pi: LatticeMap
    dstar: LatticeMap
    section: object          # LatticeMap or RationalMap with pi ∘ section = id
    degree_element: object   # coords in the dstar domain, or None
    saturated: bool

    @property
    def names(self):
        return {"exponents": self.deg.domain, "weights": self.deg.codomain,
                "dual": self.dstar.domain, "chow": self.pi.codomain}


def build_setup(deg: LatticeMap, section=None) -> WeightSetup:
    """Derive pi, the dual embedding and a section from the weight matrix."""
    if deg.rank() != deg.rows:
        raise ValueError("weights do not span the codomain up to finite index")
    kb = kernel_basis(deg)
    pi = LatticeMap(transpose(kb.entries) if kb.entries and kb.entries[0] else (),
                    deg.domain, f"chow({deg.domain})", width=deg.cols)
    _, S, _ = smith_normal_form(deg.entries)
    saturated = all(S[i][i] == 1 for i in range(deg.rows))
    dual_name = f"dual({deg.codomain})"
    if saturated:
        dstar = LatticeMap(transpose(deg.entries), dual_name, deg.domain)
    else:
        dstar = LatticeMap(kernel_basis(pi, name=dual_name).entries, dual_name, deg.domain)
    if section is None:
        sec = integral_section(pi)
    else:
        sec = section if hasattr(section, "entries") else RationalMap(section, pi.codomain, pi.domain)
        prod = mat_mul(pi.entries, sec.entries)
        n = pi.rows
        if prod != tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)) \
                and prod != tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)):
            raise ValueError("section does not split pi")
    e = degree_element_for(dstar)
    return WeightSetup(deg, pi, dstar, sec, e, saturated)


def degree_element_for(emb) -> object:
    """Lattice point of the dual with all pairings against the weights equal 1."""
    ones = tuple(1 for _ in range(emb.rows))
    sol = rational_solve(emb.entries, ones)
    if sol is None:
        return None
    if mat_vec_frac(emb.entries, sol) != tuple(Fraction(1) for _ in ones):
        return None
    if any(x.denominator != 1 for x in sol):
        return None
    return tuple(int(x) for x in sol)


def mat_vec_frac(entries, v):
    return tuple(sum(Fraction(row[j]) * v[j] for j in range(len(v))) for row in entries)


@functools.lru_cache(maxsize=None)
def positive_fiber(pi: LatticeMap, c) -> Polyhedron:
    """pi^{-1}(c) ∩ nonnegative orthant (cached; the recipe reuses fibers a lot)."""
    return fiber_polyhedron(pi, c)


@dataclass(frozen=True)
class RecipeDivisor:
    """A pp-divisor remembering which fan ray produced each term.

    `emb` is the embedding whose rows express the ambient coordinate forms on
    the coefficient space; boundary-face computations need it and the rays.
    """

    divisor: PPDivisor
    rays: tuple      # of (Label, ray vector), aligned with divisor.terms
    emb: LatticeMap

    def ray_of(self, label):
        for l, c in self.rays:
            if l == label:
                return c
        raise KeyError(label)


def pp_from_weights(setup: WeightSetup, rays=None, retraction=None, emb=None, labels=None,
                    max_orthant_dim=16) -> RecipeDivisor:
    """Coefficient per fan ray: the positive fiber shifted into the dual space.

    With `retraction` (a RationalMap splitting the embedding `emb` of the dual
    lattice, in whatever coordinates the caller likes) the shift is implicit;
    otherwise the integral section of the setup is used and coefficients come
    out in the canonical dual coordinates.  Explicit `rays` restrict the
    computation, e.g. to the rays known to meet a subvariety's quotient.
    """
    pi = setup.pi
    if rays is None:
        fan = common_refinement_fan(pi, max_orthant_dim=max_orthant_dim)
        rays = fan.rays()
    rays = [tuple(int(x) for x in c) for c in rays]
    if not rays:
        raise ValueError("no rays: the recipe degenerates (trivial quotient)")
    if retraction is None:
        emb = setup.dstar
        retr = RationalMap(rational_left_inverse(emb.entries), emb.codomain, emb.domain)
    else:
        retr = retraction
        if retr.domain != pi.domain:
            raise ValueError("retraction must be defined on the exponent lattice")
        if emb is None:
            raise ValueError("a retraction needs the matching dual embedding")
        if not check_retraction(retr, emb):
            raise ValueError("retraction does not split the dual embedding")
        if any(any(x != 0 for x in row) for row in mat_mul(pi.entries, emb.entries)):
            raise ValueError("dual embedding does not land in the kernel of pi")
    ambient = retr.codomain
    if labels is None:
        labels = [Label.ray(c, pi.codomain) for c in rays]
    tail = _recipe_tail(setup, retr, ambient)
    terms = []
    aligned = []
    for label, c in zip(labels, rays):
        fib = positive_fiber(pi, c)
        if fib.empty:
            raise ValueError(f"empty fiber over ray {c}: ray misses the orthant image")
        if retraction is None:
            shift = tuple(-Fraction(x) for x in setup.section.apply(c))
            fib = fib.translate(shift)
        coeff = map_image(fib, retr)
        terms.append((label, coeff))
        aligned.append((label, c))
    div = PPDivisor(ambient, retr.rows, tail, tuple(terms))
    order = {l: i for i, (l, _) in enumerate(div.terms)}
    aligned.sort(key=lambda t: order[t[0]])
    return RecipeDivisor(div, tuple(aligned), emb)


def _recipe_tail(setup, retr, ambient) -> Cone:
    d = setup.pi.cols
    unit = [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)]
    ker_orthant = Cone.from_ineqs(setup.pi.domain, d, unit, setup.pi.entries)
    rays = [scale_to_int(mat_vec_frac(retr.entries, r)) for r in ker_orthant.rays]
    lin = [scale_to_int(mat_vec_frac(retr.entries, l)) for l in ker_orthant.lineality]
    return Cone.from_rays(ambient, retr.rows, rays, lin)


def boundary_face(setup: WeightSetup, recipe: RecipeDivisor, label, v) -> Polyhedron:
    """The v-th boundary face of the coefficient at `label`, possibly empty.

    Empty exactly when the v-th coordinate is bounded away from zero on the
    fiber; otherwise the face of the coefficient minimising that coordinate
    form.
    """
    delta = recipe.divisor.coefficient(label)
    c = recipe.ray_of(label)
    fib = positive_fiber(setup.pi, c)
    unit = tuple(1 if j == v else 0 for j in range(setup.pi.cols))
    m = min_value(fib, unit)
    if m > 0:
        return Polyhedron.empty_in(delta.ambient, delta.dim_ambient)
    form = recipe.emb.entries[v]
    return face_minimizing(delta, form)


def projectivize(setup: WeightSetup, recipe: RecipeDivisor, cell_labels=None,
                 target=None, verify=True) -> FansyDivisor:
    """One pp-divisor per ambient coordinate: project all boundary faces along
    the degree direction.  Duplicate cells (repeated coordinates) are merged.
    `target` names the quotient lattice.
    """
    emb = recipe.emb
    if setup.degree_element is None:
        raise ValueError("no degree element: the setup is not projective")
    ambient = recipe.divisor.ambient
    # direction of the degree element in the recipe's coefficient coordinates
    # (it may have fractional coordinates there when the dual is an overlattice)
    ones = tuple(1 for _ in range(emb.rows))
    e = rational_solve(emb.entries, ones)
    if e is None or mat_vec_frac(emb.entries, e) != tuple(Fraction(1) for _ in ones):
        raise ValueError("degree element is not visible in the chosen coordinates")
    e_dir = scale_to_int(e)
    col = LatticeMap(tuple((x,) for x in e_dir), "degree-axis", ambient)
    p = quotient_projection(col, name=target or f"{ambient}/deg")
    tail_poly = recipe.divisor.tail.to_polyhedron()
    cells = []
    seen = set()
    for v in range(setup.pi.cols):
        terms = []
        for label, _ in recipe.divisor.terms:
            face = boundary_face(setup, recipe, label, v)
            terms.append((label, map_image(face, p)))
        tface = face_minimizing(tail_poly, emb.entries[v])
        timg = map_image(tface, p)
        tail_v = Cone.from_rays(p.codomain, p.rows, timg.rays, timg.lineality)
        div = PPDivisor(p.codomain, p.rows, tail_v, tuple(terms))
        if div in seen:
            continue
        seen.add(div)
        key = cell_labels[v] if cell_labels is not None else v
        cells.append((key, div))
    fansy = FansyDivisor(p.codomain, p.rows, recipe.divisor.labels(), tuple(cells))
    if verify:
        report = check_subdivision_structure(fansy)
        if not report.passed:
            raise AssertionError("projectivization violates the subdivision axioms: "
                                 + "; ".join(report.findings))
    return fansy
