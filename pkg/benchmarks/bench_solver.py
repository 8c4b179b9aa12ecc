"""Timing comparison of the two solver kernels.

Solves the same games once per backend, checks that both produce
identical tables, and prints a small table of wall times.  Run from the
repository root:

    python3 benchmarks/bench_solver.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from pursuit.engine import Variant
from pursuit.families import gk_star, standard_graph
from pursuit.solver import compiled_available, solve_game, state_count

CASES = (
    ("cycle n=12, zombies, k=2", standard_graph("cycle", 12), Variant.ZOMBIES, 2),
    ("clique n=9, cops, k=2", standard_graph("clique", 9), Variant.COPS, 2),
    ("fan n=12, lazy, k=2", standard_graph("fan", 12), Variant.LAZY_ZOMBIES, 2),
    ("rand-connected n=10 seed=1, lazy, k=3",
     standard_graph("rand-connected", 10, seed=1), Variant.LAZY_ZOMBIES, 3),
    ("hub family k=2 (n=47), zombies, k=1", gk_star(2).graph, Variant.ZOMBIES, 1),
    ("rand-outerplanar n=24 seed=3, zombies, k=2",
     standard_graph("rand-outerplanar", 24, seed=3), Variant.ZOMBIES, 2),
)


def bench(repeat: int) -> None:
    backends = ["python", "compiled"] if compiled_available() else ["python"]
    if len(backends) == 1:
        print("compiled kernel unavailable; timing the pure-Python kernel only")
    width = max(len(name) for name, *_ in CASES)
    header = f"{'case':<{width}}  {'states':>9}"
    for b in backends:
        header += f"  {b:>10}"
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, g, variant, k in CASES:
        times = {}
        tables = {}
        for b in backends:
            best = float("inf")
            for _ in range(repeat):
                t0 = time.perf_counter()
                tables[b] = solve_game(g, variant, k, backend=b)
                best = min(best, time.perf_counter() - t0)
            times[b] = best
        if len(backends) == 2:
            same = (np.array_equal(tables["python"].status, tables["compiled"].status)
                    and np.array_equal(tables["python"].times, tables["compiled"].times))
            if not same:
                raise SystemExit(f"KERNEL MISMATCH on {name!r}: "
                                 "the two backends disagree, do not trust timings")
        line = f"{name:<{width}}  {state_count(g.n, k):>9}"
        for b in backends:
            line += f"  {times[b]:>9.3f}s"
        if len(backends) == 2:
            line += f"  {times['python'] / times['compiled']:>7.1f}x"
        print(line)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3,
                    help="runs per case; best time wins (default 3)")
    args = ap.parse_args()
    bench(max(1, args.repeat))


if __name__ == "__main__":
    main()
