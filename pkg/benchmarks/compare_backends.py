#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-Python fallback.

Runs the two hot stages (boundary-edge extraction, endpoint fill + loop
trace) on random images with both kernel modules, checks the outputs are
bit-identical, and prints a timing table with speedups.

    python benchmarks/compare_backends.py --sizes 256,512,1024 --reps 3
"""

import argparse
import statistics
import sys
import time

import numpy as np

from dilcon import BinaryImage
from dilcon import _kernels_py

try:
    from dilcon import _kernels
except ImportError:
    _kernels = None


def _time(fn, reps):
    times = []
    out = None
    for _ in range(reps):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), out


def run_size(size, density, reps, seed):
    rng = np.random.default_rng(seed)
    img = BinaryImage.from_array(rng.random((size, size)) < density)
    raster = img.raster
    results = {}
    for name, kern in (("c", _kernels), ("py", _kernels_py)):
        if kern is None:
            continue
        t_extract, (px, py, et) = _time(
            lambda: kern.extract_rows(raster, 0, size), reps
        )
        t_fill, table = _time(
            lambda: kern.fill_point_table(px, py, et, size, size), reps
        )
        out_a, out_b = table[0], table[1]
        t_trace, walk = _time(
            lambda: kern.trace_edges(px, py, et, out_a, out_b, size, size), reps
        )
        results[name] = {
            "edges": len(px),
            "extract": t_extract,
            "fill": t_fill,
            "trace": t_trace,
            "arrays": (px, py, et, walk[0], walk[1]),
        }
    if len(results) == 2:
        for a, b in zip(results["c"]["arrays"], results["py"]["arrays"]):
            assert np.array_equal(a, b), "backends disagree"
    for r in results.values():
        del r["arrays"]
    return results


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="256,512,1024")
    ap.add_argument("--density", type=float, default=0.5)
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]

    if _kernels is None:
        print("compiled kernels not built (python setup.py build_ext --inplace); "
              "timing the pure-Python backend only")
    print(f"{'size':>6} {'edges':>10} {'stage':>8} {'c_ms':>10} {'py_ms':>10} {'speedup':>8}")
    for size in sizes:
        results = run_size(size, args.density, args.reps, args.seed)
        edges = next(iter(results.values()))["edges"]
        for stage in ("extract", "fill", "trace"):
            c_ms = results["c"][stage] * 1e3 if "c" in results else float("nan")
            py_ms = results["py"][stage] * 1e3
            speedup = py_ms / c_ms if "c" in results else float("nan")
            print(
                f"{size:>6} {edges:>10} {stage:>8} {c_ms:>10.2f} {py_ms:>10.2f} {speedup:>7.1f}x"
            )
    return 0


if __name__ == "__main__":
    sys.exit(main())
