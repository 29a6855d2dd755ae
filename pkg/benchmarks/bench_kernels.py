"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the three hot operations on both lanes at sizes where the pure lane
is still comfortable, checks the outputs agree, and prints a table.

    python benchmarks/bench_kernels.py [--heavy]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from dyckbaker._kernels import pure

try:
    from dyckbaker._kernels import _core
except ImportError:
    _core = None


def _timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def bench_counts(M, n):
    pure_out, tp = _timed(pure.class_counts, M, n)
    if _core is None:
        return tp, None, True
    core_out, tc = _timed(_core.class_counts, M, n)
    return tp, tc, core_out == pure_out


def bench_cylinders(M, n, m):
    pure_out, tp = _timed(pure.cylinder_counts, M, n, pure.CLASS_ALPHA, m)
    if _core is None:
        return tp, None, True
    def run_core():
        table = np.zeros((2 * M) ** m, dtype=np.int64)
        words = _core.cylinder_fill(M, n, pure.CLASS_ALPHA, m, (), table)
        return table.tolist(), words
    core_out, tc = _timed(run_core)
    return tp, tc, core_out == pure_out


def bench_scatter(M, n, a):
    pure_out, tp = _timed(pure.scatter_solve, M, n, pure.CLASS_ALPHA, a, None)
    if _core is None:
        return tp, None, True
    def run_core():
        total = _core.count_class(M, n, pure.CLASS_ALPHA)
        xu = np.empty(total)
        xc = np.empty(total)
        xs = np.empty(0)
        interior = np.empty(total, dtype=np.uint8)
        _core.scatter_fill(M, n, pure.CLASS_ALPHA, a[0], a[1], 1, 8, 0, (),
                           xu, xc, xs, interior)
        return xu.tolist(), xc.tolist()
    core_out, tc = _timed(run_core)
    agree = core_out[0] == pure_out[0] and core_out[1] == pure_out[1]
    return tp, tc, agree


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--heavy", action="store_true",
                        help="larger sizes (slower pure lane)")
    args = parser.parse_args()

    n_count = 13 if args.heavy else 11
    n_cyl = 12 if args.heavy else 10
    n_scat = 11 if args.heavy else 9

    rows = [
        (f"class_counts M=2 n={n_count}", *bench_counts(2, n_count)),
        (f"cylinder_counts M=2 n={n_cyl} m=2", *bench_cylinders(2, n_cyl, 2)),
        (f"scatter_solve M=2 n={n_scat} a=1/3", *bench_scatter(2, n_scat, (1, 3))),
    ]

    lane = "cython" if _core is not None else "(extension missing)"
    print(f"compiled lane: {lane}")
    print(f"{'operation':36s} {'pure':>9s} {'compiled':>9s} {'speedup':>8s}  agree")
    for name, tp, tc, agree in rows:
        if tc is None:
            print(f"{name:36s} {tp:8.3f}s {'-':>9s} {'-':>8s}  {agree}")
        else:
            print(f"{name:36s} {tp:8.3f}s {tc:8.3f}s {tp / tc:7.1f}x  {agree}")


if __name__ == "__main__":
    main()
