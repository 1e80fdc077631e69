#!/usr/bin/env python3
"""Benchmark the compiled sampling core against the numpy fallback.

Run from the repository root after building the extension in place:

    python. setup.py build_ext --inplace
    python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from fracstoch._kernels import pybackend

try:
    from fracstoch._kernels import _core
except ImportError:
    _core = None


def gen(seed):
    return np.random.Generator(np.random.Philox(seed))


def time_call(fn, *args, repeat=3, **kwargs):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args, **kwargs)
        best = min(best, time.perf_counter() - t0)
    return best


def row(name, py_time, cy_time, unit):
    speedup = f"{py_time / cy_time:5.2f}x" if cy_time else "   - "
    cy = f"{cy_time:9.4f}" if cy_time else "        -"
    print(f"{name:34s} {py_time:9.4f} {cy} {speedup}   {unit}")


def main():
    n = 2_000_000
    orders = np.array([0.7, 0.5])
    weights = np.array([1.0, 1.0])
    orders3 = np.array([13 / 15, 13 / 15 - 0.2, 13 / 15 - 0.4])
    weights3 = np.array([1.0, 2.0, 1.0])
    n_fp = 20_000

    print(f"{'kernel':34s} {'numpy[s]':>9s} {'cython[s]':>9s} ratio")
    cases = [
        ("stable_standard(0.5), 2e6 draws",
         lambda impl: impl.stable_standard(0.5, n, gen(1)), "draws"),
        ("combo_increments n=1, 2e6 spans",
         lambda impl: impl.combo_increments(np.full(n // 2, 0.5), orders,
                                            weights, 0.0, gen(2)), "spans"),
        ("combo_increments n=2+clock, 1e6",
         lambda impl: impl.combo_increments(np.full(n // 2, 1.0), orders3,
                                            weights3, 0.75, gen(3)), "spans"),
        ("first_passage 2e4 paths @1e-3",
         lambda impl: impl.first_passage_batch(1.0, 1e-3, n_fp, orders,
                                               weights, 0.0, gen(4)), "paths"),
    ]
    for name, fn, unit in cases:
        py_t = time_call(fn, pybackend)
        cy_t = time_call(fn, _core) if _core is not None else None
        row(name, py_t, cy_t, unit)
    if _core is None:
        print("\ncompiled core not built; showing the fallback only")


if __name__ == "__main__":
    main()
