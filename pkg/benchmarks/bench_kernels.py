#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Run:  python benchmarks/bench_kernels.py [--repeat 5]

Covers the three hot paths: the centered-case series, the symmetric-case
series (both dominate the extremal-constant sweeps), and Poisson sampling
(dominates the Monte-Carlo checks).  End-to-end numbers for the full
extremal reproduction are printed last.
"""

from __future__ import annotations

import argparse
import os
import time

import numpy as np


def _best_of(fn, repeat: int, inner: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(inner):
            fn()
        best = min(best, (time.perf_counter() - t0) / inner)
    return best


def bench_kernels(mod, repeat: int) -> dict[str, float]:
    u = np.random.Generator(np.random.Philox(7)).random(400_000)
    out = np.empty(200_000, dtype=np.int64)

    def poisson_small():
        mod.poisson_inversion(1.0, u[:200_000], out)

    def poisson_big():
        mod.poisson_ptrs_fill(100.0, u, out, 0)

    results = {
        "L series (p=33.46)": _best_of(
            lambda: mod.gen_bell_log(1.0, 33.46, 1.0, 1e-13, 10**6),
            repeat, 200),
        "L series (p=2000)": _best_of(
            lambda: mod.gen_bell_log(1.0, 2000.0, 1.0, 1e-13, 10**6),
            repeat, 100),
        "K series (p=22.3)": _best_of(
            lambda: mod.k_series_log(22.3, 0, 1e-13, 10**6), repeat, 200),
        "K series (p=10^4)": _best_of(
            lambda: mod.k_series_log(1e4, 0, 1e-10, 10**6), repeat, 20),
        "Poisson x2e5 (lam=1)": _best_of(poisson_small, repeat, 3),
        "Poisson x2e5 (lam=100)": _best_of(poisson_big, repeat, 3),
    }
    return results


def bench_end_to_end() -> float:
    from rosenthal.extrema import reproduce_theorem1

    t0 = time.perf_counter()
    reproduce_theorem1()
    return time.perf_counter() - t0


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    from rosenthal import _kernels_py

    try:
        from rosenthal import _kernels
    except ImportError:
        _kernels = None

    rows = {}
    if _kernels is not None:
        rows["cython"] = bench_kernels(_kernels, args.repeat)
    rows["python"] = bench_kernels(_kernels_py, args.repeat)

    names = list(next(iter(rows.values())))
    print(f"{'kernel':<24} " + " ".join(f"{b:>12}" for b in rows) +
          ("      speedup" if len(rows) == 2 else ""))
    for name in names:
        cells = [rows[b][name] for b in rows]
        line = f"{name:<24} " + " ".join(f"{c * 1e6:>10.1f}us" for c in cells)
        if len(cells) == 2:
            line += f" {cells[1] / cells[0]:>12.1f}x"
        print(line)

    backend = "cython" if (_kernels is not None and
                           not os.environ.get("ROSENTHAL_PURE_PYTHON")) \
        else "python"
    print(f"\nend-to-end extremal reproduction ({backend} backend): "
          f"{bench_end_to_end():.2f} s")


if __name__ == "__main__":
    main()
