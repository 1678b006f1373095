#!/usr/bin/env python3
"""Benchmark the double description kernels: compiled extension vs pure Python.

Workloads are the shapes that dominate real runs: positive fibers of the
rank-2 Grassmannian setup (equality-heavy, medium dimension) and random cone
conversions.  Usage: python benchmarks/bench_dd.py [--repeat N]
"""

import argparse
import random
import time

from ppfan._ddpure import process as pure_process
from ppfan.dd import dd_cone

try:
    from ppfan._ddcore import process as compiled_process
except ImportError:
    compiled_process = None


def fiber_workload(n):
    """Homogenised positive-fiber systems for every partition ray of Gr(2,n)."""
    from ppfan.grassmann import gr_setup, pair_vector, partitions

    setup = gr_setup(n)
    jobs = []
    ell = setup.pi.cols
    unit = [tuple(1 if j == i else 0 for j in range(ell + 1)) for i in range(ell + 1)]
    for B in partitions(n):
        c = setup.pi.apply(pair_vector(n, B.part))
        eqs = [row + (-c[i],) for i, row in enumerate(setup.pi.entries)]
        jobs.append((ell + 1, unit, eqs))
    return jobs


def random_workload(count, dim, seed=7):
    rng = random.Random(seed)
    jobs = []
    for _ in range(count):
        ineqs = [tuple(rng.randint(-5, 5) for _ in range(dim))
                 for _ in range(rng.randint(dim, 2 * dim))]
        eqs = [tuple(rng.randint(-3, 3) for _ in range(dim))
               for _ in range(rng.randint(0, 2))]
        jobs.append((dim, ineqs, eqs))
    return jobs


def run(jobs, process, repeat):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = [dd_cone(d, ineqs, eqs, process=process) for d, ineqs, eqs in jobs]
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    workloads = [
        ("fibers n=5", fiber_workload(5)),
        ("fibers n=6", fiber_workload(6)),
        ("random dim 4", random_workload(60, 4)),
        ("random dim 6", random_workload(30, 6)),
    ]
    print(f"{'workload':<16} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for name, jobs in workloads:
        t_pure, r_pure = run(jobs, pure_process, args.repeat)
        if compiled_process is None:
            print(f"{name:<16} {t_pure:>10.4f} {'n/a':>13} {'n/a':>8}")
            continue
        t_comp, r_comp = run(jobs, compiled_process, args.repeat)
        assert r_pure == r_comp, f"backends disagree on workload {name}"
        print(f"{name:<16} {t_pure:>10.4f} {t_comp:>13.4f} {t_pure / t_comp:>7.2f}x")


if __name__ == "__main__":
    main()
