"""Command line interface: machine-readable JSON on stdout, diagnostics on stderr.

Exit codes: 0 success, 1 verification failure, 2 bad input.
"""

import argparse
import json
import sys

from .chow import build_setup, pp_from_weights, projectivize
from .divisors import fansy_equal
from .grassmann import fansy_closed_form, fansy_via_recipe, tail_fan
from .lattice import LatticeMap
from .polyhedra import RefinementGuardExceeded, induced_subdivision
from .verify import run_battery


def load_weights(path):
    with open(path) as fh:
        data = json.load(fh)
    rank = data["lattice_rank"]
    weights = data["weights"]
    if any(len(w) != rank for w in weights):
        raise ValueError("every weight must have lattice_rank entries")
    rows = tuple(tuple(w[r] for w in weights) for r in range(rank))
    return LatticeMap(rows, "E", "M")


def emit(obj):
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def parse_vector(text):
    return tuple(int(x) for x in text.replace(",", " ").split())


def cmd_tailfan(args):
    fan = tail_fan(args.k, args.n)
    emit(fan.to_json())
    return 0


def cmd_setup(args):
    setup = build_setup(load_weights(args.weights))
    from .chow import _recipe_tail
    from .lattice import RationalMap, rational_left_inverse
    retr = RationalMap(rational_left_inverse(setup.dstar.entries),
                       setup.dstar.codomain, setup.dstar.domain)
    emit({
        "pi": setup.pi.to_json(),
        "section": setup.section.to_json(),
        "dual_embedding": setup.dstar.to_json(),
        "tail_cone": _recipe_tail(setup, retr, setup.dstar.domain).to_json(),
        "degree_element": list(setup.degree_element) if setup.degree_element else None,
        "image_saturated": setup.saturated,
    })
    return 0


def cmd_ppdivisor(args):
    setup = build_setup(load_weights(args.weights))
    rays = None
    if args.rays:
        with open(args.rays) as fh:
            rays = [tuple(r) for r in json.load(fh)]
    recipe = pp_from_weights(setup, rays=rays, max_orthant_dim=args.max_faces)
    out = recipe.divisor.to_json()
    out["rays"] = [{"label": l.to_json(), "ray": list(c)} for l, c in recipe.rays]
    emit(out)
    return 0


def cmd_projectivize(args):
    setup = build_setup(load_weights(args.weights))
    recipe = pp_from_weights(setup, max_orthant_dim=args.max_faces)
    fansy = projectivize(setup, recipe)
    emit(fansy.to_json())
    return 0


def cmd_fansy(args):
    if args.n > args.max_n:
        raise ValueError(f"n={args.n} beyond --max-n={args.max_n}")
    if args.method == "closed":
        emit(fansy_closed_form(args.n).to_json())
        return 0
    if args.method == "recipe":
        emit(fansy_via_recipe(args.n, max_n=args.max_n).to_json())
        return 0
    closed = fansy_closed_form(args.n)
    recipe = fansy_via_recipe(args.n, max_n=args.max_n)
    equal, matching = fansy_equal(closed, recipe)
    out = {
        "equal": equal,
        "closed": closed.to_json(),
        "recipe": recipe.to_json(),
    }
    if equal:
        out["cell_matching"] = [{"closed": list(k), "recipe": list(v)}
                                for k, v in sorted(matching.items())]
    else:
        out["mismatch"] = matching
    emit(out)
    return 0 if equal else 1


def cmd_verify(args):
    results = run_battery(args.n)
    for name, passed, detail in results:
        sys.stderr.write(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}\n")
    emit({"n": args.n,
          "pass": all(p for _, p, _ in results),
          "criteria": [{"name": n_, "pass": p, "detail": d} for n_, p, d in results]})
    return 0 if all(p for _, p, _ in results) else 1


def cmd_subdivision(args):
    setup = build_setup(load_weights(args.weights))
    c = parse_vector(args.c)
    heights = setup.section.apply(c)
    points = [setup.deg.column(j) for j in range(setup.deg.cols)]
    sub = induced_subdivision(setup.deg.codomain, points, heights)
    emit(sub.to_json())
    return 0


def cmd_localcheck(args):
    from .grassmann import local_chart_report
    rep = local_chart_report(args.n)
    emit(rep.to_json())
    return 0 if rep.passed else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ppfan",
        description="Exact polyhedral and fansy divisors of torus varieties from weight data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tailfan", help="sign-pattern tail fan of the (k,n) Grassmannian")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_tailfan)

    p = sub.add_parser("setup", help="derived exact-sequence data for a weight matrix")
    p.add_argument("--weights", required=True)
    p.set_defaults(fn=cmd_setup)

    p = sub.add_parser("ppdivisor", help="divisor of the affine cone from a weight matrix")
    p.add_argument("--weights", required=True)
    p.add_argument("--rays", help="JSON file with an explicit list of rays")
    p.add_argument("--max-faces", type=int, default=16,
                   help="guard on the orthant dimension for the refinement fan")
    p.set_defaults(fn=cmd_ppdivisor)

    p = sub.add_parser("projectivize", help="fansy divisor of the projectivized variety")
    p.add_argument("--weights", required=True)
    p.add_argument("--max-faces", type=int, default=16)
    p.set_defaults(fn=cmd_projectivize)

    p = sub.add_parser("fansy", help="Gr(2,n) fansy divisor, closed form and/or recipe")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["closed", "recipe", "both"], default="both")
    p.add_argument("--max-n", type=int, default=6)
    p.set_defaults(fn=cmd_fansy)

    p = sub.add_parser("verify", help="run the full verification battery for one n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("subdivision", help="regular subdivision induced by a ray")
    p.add_argument("--weights", required=True)
    p.add_argument("--c", required=True, help="ray coordinates, comma or space separated")
    p.set_defaults(fn=cmd_subdivision)

    p = sub.add_parser("localcheck", help="chart comparison diagram report")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_localcheck)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError, OSError, RefinementGuardExceeded, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
