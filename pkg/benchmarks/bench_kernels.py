#!/usr/bin/env python3
"""Benchmark the compiled CSR kernels against the numpy/scipy fallback.

Times the two hot primitives (row-subset dot products and weighted row
accumulation) across batch sizes, then a full solver run per backend in a
subprocess so the import-time backend switch applies.

Usage: python3 benchmarks/bench_kernels.py [--quick]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from finitesum._kernels import _fallback

try:
    from finitesum._kernels import _speedups
except ImportError:
    _speedups = None


def build_csr(rng, n, d, density):
    nnz_per_row = max(1, int(d * density))
    indptr = np.arange(0, (n + 1) * nnz_per_row, nnz_per_row, dtype=np.int64)
    indices = np.concatenate([
        np.sort(rng.choice(d, size=nnz_per_row, replace=False))
        for _ in range(n)
    ]).astype(np.int64)
    data = rng.standard_normal(n * nnz_per_row)
    return indptr, indices, data, n, d


def time_call(fn, *args, repeats=200):
    fn(*args)  # warm up
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn(*args)
    return (time.perf_counter() - t0) / repeats


def bench_kernels(quick):
    rng = np.random.default_rng(0)
    n, d, density = (2000, 500, 0.05) if quick else (20000, 2000, 0.02)
    triplet = build_csr(rng, n, d, density)
    x = rng.standard_normal(d)
    print(f"CSR {n} x {d}, {triplet[2].size} nonzeros")
    print(f"{'kernel':<22}{'batch':>8}{'python':>12}{'compiled':>12}{'speedup':>9}")
    handles = {"python": _fallback.make_matrix(*triplet)}
    if _speedups is not None:
        handles["compiled"] = _speedups.make_matrix(*triplet)
    for b in (16, 256, n):
        rows = np.sort(rng.choice(n, size=b, replace=False)).astype(np.int64)
        coef = rng.standard_normal(b)
        for name, fns in (("subset_dots", "subset_dots"),
                          ("subset_weighted_sum", "subset_weighted_sum")):
            args = (rows, x) if name == "subset_dots" else (rows, coef)
            t_py = time_call(getattr(_fallback, fns), handles["python"], *args)
            if _speedups is None:
                print(f"{name:<22}{b:>8}{t_py * 1e6:>10.1f}us{'-':>12}{'-':>9}")
                continue
            t_cy = time_call(getattr(_speedups, fns), handles["compiled"], *args)
            print(f"{name:<22}{b:>8}{t_py * 1e6:>10.1f}us"
                  f"{t_cy * 1e6:>10.1f}us{t_py / t_cy:>8.1f}x")


SOLVER_SNIPPET = """
import time
import finitesum as fs
from finitesum.objectives import Objective

ds, _ = fs.make_synthetic({n}, {d}, "logistic", noise=0.1, seed=1, unit_rows=True)
obj = Objective(ds, "logistic_binary", lam=1e-4)
cfg = fs.SolverConfig(eta=1.0 / obj.smoothness_bound(), p=0.5,
                      restart=fs.R3(), max_evals=50 * obj.n, seed=1)
t0 = time.perf_counter()
res = fs.run_multistage(obj, obj.zero_point(), cfg, timing=False)
print(f"{{fs.backend_name()}} {{time.perf_counter() - t0:.3f}}s "
      f"f={{res.final_objective:.6f}} axis={{res.trace.counter.paper_axis}}")
"""


def bench_solver(quick):
    n, d = (1000, 20) if quick else (5000, 100)
    print(f"\nfull solver run (n={n}, d={d}, 50 effective passes):", flush=True)
    for force in ("0", "1"):
        env = dict(os.environ, FINITESUM_PURE_PYTHON=force)
        subprocess.run([sys.executable, "-c", SOLVER_SNIPPET.format(n=n, d=d)],
                       env=env, check=True)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true",
                        help="smaller sizes for a fast sanity run")
    args = parser.parse_args()
    if _speedups is None:
        print("compiled extension not built; timing the fallback only")
    bench_kernels(args.quick)
    bench_solver(args.quick)


if __name__ == "__main__":
    main()
