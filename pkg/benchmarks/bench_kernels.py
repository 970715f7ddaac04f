#!/usr/bin/env python3
"""Benchmark the compiled clique-partition kernels against the pure-Python
fallback on the workloads that dominate the verification suites.

Usage: python benchmarks/bench_kernels.py [--samples N] [--seed S]
"""

import argparse
import random
import statistics
import time

from cliquestream import _kernels_py
from cliquestream.graph import OrderedGraph
from cliquestream.verify import random_graph_events

try:
    from cliquestream import _kernels_c
except ImportError:
    _kernels_c = None


def make_cases(samples, seed, n_lo, n_hi):
    rng = random.Random(seed)
    cases = []
    for _ in range(samples):
        n = rng.randint(n_lo, n_hi)
        p = rng.choice((0.2, 0.5, 0.8))
        g = OrderedGraph.from_events(random_graph_events(rng, n, p))
        cases.append([g.adjacency_mask(v) for v in range(n)])
    return cases


def bench(label, fn, cases, repeats=3):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        for adj in cases:
            fn(adj)
        times.append(time.perf_counter() - t0)
    best = min(times)
    print(f"  {label:<28} {best:8.3f}s best of {repeats} "
          f"(median {statistics.median(times):.3f}s)")
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    workloads = [
        ("exhaustive enumeration, n in 4..9", "exhaustive_max_partition", 4, 9, None),
        ("branch and bound, n in 8..14", "branch_bound_max_partition", 8, 14, 10**7),
    ]
    for title, fname, lo, hi, limit in workloads:
        cases = make_cases(args.samples, args.seed, lo, hi)
        print(f"{title} ({args.samples} graphs):")
        py_fn = getattr(_kernels_py, fname)
        run_py = (lambda adj, f=py_fn, l=limit: f(adj, l)) if limit else py_fn
        t_py = bench("pure python", run_py, cases)
        if _kernels_c is None:
            print("  compiled kernel not built; skipping comparison")
            continue
        c_fn = getattr(_kernels_c, fname)
        run_c = (lambda adj, f=c_fn, l=limit: f(adj, l)) if limit else c_fn
        t_c = bench("compiled (cython)", run_c, cases)
        print(f"  speedup: {t_py / t_c:.1f}x")


if __name__ == "__main__":
    main()
