"""Benchmark: numba-jitted kernels vs. the pure-Python fallback path.

The jitted path is what normal experiments run; the fallback (selected by
COSTLAB_DISABLE_NUMBA=1) exists for environments without numba and for
cross-checking tallies.  Both execute the same source and produce
bit-identical counts, so only wall-clock speed differs.

The pure-Python column is measured in a subprocess with the fallback flag
set, so helper kernels are un-jitted there too.

Usage:
    python benchmarks/bench_kernels.py [--n 4096] [--repeats 3]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from costlab import catalog, kernels
from costlab._dispatch import DISABLE_ENV, NUMBA_ENABLED


def _workload(algorithm: str, n: int):
    """Return (kernel, make_args) where make_args yields fresh inputs."""
    if algorithm == "insert":
        inst = catalog.worst_witness(algorithm, n)

        def make_args():
            work = np.empty(n + 1, dtype=np.int64)
            work[:n] = inst.data
            return (work, int(inst.key))

        return kernels.insert_kernel, make_args
    if algorithm == "binary_search":
        inst = catalog.worst_witness(algorithm, n)
        return kernels.binary_search_kernel, lambda: (inst.data.copy(), int(inst.key))
    if algorithm == "euclid_gcd":
        inst = catalog.worst_witness(algorithm, n)
        a, b = int(inst.data[0]), int(inst.data[1])
        return kernels.euclid_kernel, lambda: (a, b)
    if algorithm == "select_median_of_medians":
        inst = catalog.random_instance(algorithm, n, 1)
        return kernels.select_mom_kernel, lambda: (inst.data.copy(), (n - 1) // 2)
    inst = catalog.random_instance(algorithm, n, 1)
    kernel = {
        "min": kernels.min_kernel,
        "insertion_sort": kernels.insertion_sort_kernel,
        "merge_sort": kernels.merge_sort_kernel,
        "quicksort_first_pivot": kernels.quicksort_kernel,
        "floyd_heapify": kernels.floyd_heapify_kernel,
        "heapsort": kernels.heapsort_kernel,
    }[algorithm]
    return kernel, lambda: (inst.data.copy(),)


def _bench_n(algorithm: str, n: int) -> int:
    if algorithm == "insertion_sort":
        return min(n, 16384)  # quadratic on average: keep the python side sane
    return n


def _time(fn, make_args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        args = make_args()
        counts = kernels.new_counts()
        t0 = time.perf_counter()
        fn(*args, counts)
        best = min(best, time.perf_counter() - t0)
    return best


def measure(n: int, repeats: int) -> dict[str, float]:
    times: dict[str, float] = {}
    for algorithm in catalog.ALGORITHMS:
        kernel, make_args = _workload(algorithm, _bench_n(algorithm, n))
        kernel(*make_args(), kernels.new_counts())  # warm the jit (no-op when disabled)
        times[algorithm] = _time(kernel, make_args, repeats)
    return times


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=4096)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--emit-json", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.emit_json:
        print(json.dumps(measure(args.n, args.repeats)))
        return

    if not NUMBA_ENABLED:
        print(
            f"numba path is disabled ({DISABLE_ENV}); nothing to compare. "
            "Re-run without the flag to benchmark jit vs. pure Python."
        )
        return

    jit_times = measure(args.n, args.repeats)
    env = dict(os.environ, **{DISABLE_ENV: "1"})
    out = subprocess.run(
        [sys.executable, __file__, "--n", str(args.n), "--repeats", str(args.repeats), "--emit-json"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    py_times = json.loads(out.stdout)

    print(f"n = {args.n}, best of {args.repeats} repeats")
    print(f"{'kernel':<26} {'jit (ms)':>10} {'python (ms)':>12} {'speedup':>9}")
    for algorithm in catalog.ALGORITHMS:
        jit_t = jit_times[algorithm]
        py_t = py_times[algorithm]
        note = f"  (n={_bench_n(algorithm, args.n)})" if _bench_n(algorithm, args.n) != args.n else ""
        print(
            f"{algorithm:<26} {jit_t * 1e3:>10.3f} {py_t * 1e3:>12.3f} "
            f"{py_t / max(jit_t, 1e-9):>8.1f}x{note}"
        )


if __name__ == "__main__":
    main()
