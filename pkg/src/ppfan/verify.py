"""Self-contained verification battery for the rank-2 Grassmannian results.

Each check returns (name, passed, detail); `run_battery(n)` collects every
check that applies at that n.  The CLI `verify` subcommand and the test
suite both drive these.
"""

from fractions import Fraction
from math import comb

from .divisors import check_subdivision_structure, fansy_equal
from .grassmann import (
    RootSystemA,
    fansy_closed_form,
    fansy_via_recipe,
    gr_setup,
    inversion_set,
    local_chart_report,
    longest_coset_rep,
    pair_vector,
    pairs,
    partition_ray,
    partitions,
    positive_fiber_part,
    shuffles,
    sigma_cone,
    tail_cone_chart,
    tail_fan,
)
from .lattice import check_retraction, identity_matrix, mat_mul
from .polyhedra import Polyhedron, induced_subdivision, intersect


def check_two_routes(n):
    closed = fansy_closed_form(n)
    recipe = fansy_via_recipe(n)
    eq, matching = fansy_equal(closed, recipe)
    if not eq:
        return False, f"routes disagree: {matching}"
    want_labels = 2 ** (n - 1) - n - 1
    if len(closed.labels) != want_labels:
        return False, f"{len(closed.labels)} labels, expected {want_labels}"
    want_cells = comb(n, 2)
    for label in closed.labels:
        cells = [p for _, p in closed.subdivision_for(label).cells if not p.empty]
        if len(cells) != want_cells:
            return False, f"{len(cells)} maximal cells at {label}, expected {want_cells}"
    rep = check_subdivision_structure(closed)
    if not rep.passed:
        return False, "; ".join(rep.findings[:3])
    return True, f"{want_labels} labels, {want_cells} cells each, matching {len(matching)} cells"


def check_edge_endpoints(n):
    rs = RootSystemA(n)
    closed = fansy_closed_form(n)
    for B in partitions(n):
        ell = rs.ell_sum(B.part)
        hi = tuple(Fraction(B.b - 1, n - 2) * x for x in ell)
        lo = tuple(Fraction(B.b + 1 - n, n - 2) * x for x in ell)
        center = tuple(Fraction(2 * B.b - n, 2 * (n - 2)) * x for x in ell)
        if tuple((a + b) / 2 for a, b in zip(hi, lo)) != center:
            return False, f"center formula fails at {B.part}"
        seen = set()
        for _, cell in closed.cells:
            seen.update(cell.coefficient(B.label()).vertices)
        if seen != {hi, lo}:
            return False, f"edge endpoints at {B.part}: {sorted(seen)}"
    return True, "endpoints (b-1)/(n-2) and (b+1-n)/(n-2) times the part vector"


def check_positive_fibers(n):
    for B in partitions(n):
        positive_fiber_part(n, B)  # raises on mismatch
    return True, f"all {len(partitions(n))} fibers are segment + cone"


def check_induced_subdivisions(n):
    setup = gr_setup(n)
    points = [setup.ws.deg.column(j) for j in range(setup.ws.deg.cols)]
    for B in partitions(n):
        c, _, _ = partition_ray(n, B)
        for heights in (pair_vector(n, B.part), setup.ws.section.apply(c)):
            sub = induced_subdivision(f"Wt({n})", points, heights)
            got = {frozenset(m) for m, _ in sub.cells}
            cell1 = frozenset(idx for idx, (i, j) in enumerate(pairs(n))
                              if i in B.part or j in B.part)
            cell2 = frozenset(idx for idx, (i, j) in enumerate(pairs(n))
                              if i in B.complement or j in B.complement)
            if got != {cell1, cell2}:
                return False, f"heights from {B.part} give cells {sorted(map(sorted, got))}"
    return True, "every partition height splits the weight polytope into its two big cells"


def check_cube(n=4):
    sig = sigma_cone(4)
    cut = intersect(sig.to_polyhedron(),
                    Polyhedron.from_halfspaces("Nt(4)", 4, [], [((1, 1, 1, 1), 1)]))
    expect = set()
    for i in range(4):
        expect.add(tuple(Fraction(1 if j == i else 0) for j in range(4)))
        expect.add(tuple(Fraction(1, 2) - (1 if j == i else 0) for j in range(4)))
    if set(cut.vertices) != expect:
        return False, f"{len(cut.vertices)} crosscut vertices"
    return True, "crosscut at height 1 is the expected 8-vertex cube"


def check_tail_fans(k, n):
    fan = tail_fan(k, n)
    if len(fan.maximal) != comb(n, k):
        return False, f"{len(fan.maximal)} cones, expected {comb(n, k)}"
    if any(not c.is_pointed for _, c in fan.maximal):
        return False, "non-pointed maximal cone"
    if not fan.is_complete():
        return False, "fan is not complete"
    chart = tail_cone_chart(set(range(1, n)) - {k}, n)
    gens = set()
    rs = RootSystemA(n)
    for i in range(1, n + 1):
        e = rs.ell(i)
        gens.add(e if i <= k else tuple(-x for x in e))
    from .polyhedra import Cone
    want = Cone.from_rays(rs.ambient, rs.dim, gens)
    if chart != want:
        return False, "chart cone differs from the sign-pattern cone"
    return True, f"{comb(n, k)} pointed cones, complete; chart cone matches"


def check_weyl(kmax=3, nmax=7):
    for n in range(2, nmax + 1):
        for k in range(1, min(kmax, n - 1) + 1):
            sh = shuffles(k, n)
            if len(sh) != comb(n, k):
                return False, f"#shuffles({k},{n}) = {len(sh)}"
            w = longest_coset_rep(k, n)
            if w not in sh:
                return False, f"longest rep not a shuffle at ({k},{n})"
            cyc = tuple(i % n + 1 for i in range(1, n + 1))
            wcyc = tuple(range(1, n + 1))
            for _ in range(n - k):
                wcyc = tuple(cyc[wcyc[i] - 1] for i in range(n))
            if w != wcyc:
                return False, f"cycle power formula fails at ({k},{n})"
            if inversion_set(w)[1] != k * (n - k):
                return False, f"length of longest rep at ({k},{n})"
    return True, f"counts, cycle formula and lengths for k<=({kmax}), n<=({nmax})"


def check_algebraic_identities(n):
    setup = gr_setup(n)
    if not check_retraction(setup.retraction, setup.emb):
        return False, "retraction does not split the embedding"
    for B in partitions(n):
        lhs = setup.emb.apply(tuple(
            (1 if i in B.part else 0) - (1 if i in B.complement else 0)
            for i in range(1, n + 1)))
        rhs = tuple(2 * (a - b) for a, b in
                    zip(pair_vector(n, B.part), pair_vector(n, B.complement)))
        if lhs != rhs:
            return False, f"indicator identity fails at {B.part}"
    sec = setup.ws.section
    prod = mat_mul(setup.pi.entries, sec.entries)
    if prod != identity_matrix(setup.pi.rows):
        return False, "section does not split pi"
    # retraction applied to the part indicator matches the closed-form endpoint
    for B in partitions(n):
        got = setup.retraction.apply(pair_vector(n, B.part))
        head = Fraction(B.b - 1, n - 2)
        trace = Fraction((B.b - 1) * B.b, 2 * (n - 2) * (n - 1))
        want = tuple(head * (1 if i in B.part else 0) - trace for i in range(1, n + 1))
        if got != want:
            return False, f"retracted indicator fails at {B.part}"
    return True, "retraction splits, indicator identities, section splits pi"


def check_local_chart(n):
    rep = local_chart_report(n)
    return rep.passed, ("squares commute, visibility matches"
                        if rep.passed else "; ".join(rep.findings[:3]))


def run_battery(n):
    """All checks applicable at this n, as (name, passed, detail) triples."""
    checks = [
        (f"two-route agreement n={n}", lambda: check_two_routes(n)),
        (f"edge endpoints n={n}", lambda: check_edge_endpoints(n)),
        (f"positive fibers n={n}", lambda: check_positive_fibers(n)),
        (f"algebraic identities n={n}", lambda: check_algebraic_identities(n)),
        ("weyl identities", lambda: check_weyl()),
        (f"tail fan (2,{n})", lambda: check_tail_fans(2, n)),
    ]
    if n == 4:
        checks.append(("cube crosscut", check_cube))
    if n <= 5:
        checks.append((f"induced subdivisions n={n}", lambda: check_induced_subdivisions(n)))
        checks.append((f"local chart n={n}", lambda: check_local_chart(n)))
    results = []
    for name, fn in checks:
        try:
            passed, detail = fn()
        except Exception as exc:  # a failed hard assertion is a failed check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((name, passed, detail))
    return results
