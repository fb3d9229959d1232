"""The jitted and pure-Python kernel paths must tally identically."""

import json
import os
import subprocess
import sys
import textwrap

import numpy as np
import pytest

from costlab import catalog, kernels
from costlab._dispatch import DISABLE_ENV, NUMBA_ENABLED

pytestmark = pytest.mark.skipif(
    not NUMBA_ENABLED, reason="numba disabled: both paths are the same function"
)


def _kernel_args(algorithm, n, seed):
    inst = catalog.random_instance(algorithm, n, seed)
    if algorithm == "insert":
        work = np.empty(n + 1, dtype=np.int64)
        work[:n] = inst.data
        return (work, int(inst.key))
    if algorithm == "binary_search":
        return (inst.data.copy(), int(inst.key))
    if algorithm == "euclid_gcd":
        a, b = int(inst.data[0]), int(inst.data[1])
        return (max(a, b), min(a, b))
    if algorithm == "select_median_of_medians":
        return (inst.data.copy(), (n - 1) // 2)
    return (inst.data.copy(),)


KERNELS = {
    "min": kernels.min_kernel,
    "insert": kernels.insert_kernel,
    "insertion_sort": kernels.insertion_sort_kernel,
    "binary_search": kernels.binary_search_kernel,
    "merge_sort": kernels.merge_sort_kernel,
    "quicksort_first_pivot": kernels.quicksort_kernel,
    "euclid_gcd": kernels.euclid_kernel,
    "floyd_heapify": kernels.floyd_heapify_kernel,
    "heapsort": kernels.heapsort_kernel,
    "select_median_of_medians": kernels.select_mom_kernel,
}


@pytest.mark.parametrize("algorithm", catalog.ALGORITHMS)
@pytest.mark.parametrize("n,seed", [(5, 0), (16, 1), (33, 2)])
def test_jit_matches_py_func(algorithm, n, seed):
    kernel = KERNELS[algorithm]
    args_jit = _kernel_args(algorithm, n, seed)
    args_py = _kernel_args(algorithm, n, seed)
    counts_jit = kernels.new_counts()
    counts_py = kernels.new_counts()
    out_jit = kernel(*args_jit, counts_jit)
    out_py = kernel.py_func(*args_py, counts_py)
    assert np.array_equal(counts_jit, counts_py), algorithm
    if out_jit is not None:
        assert out_jit == out_py
    if isinstance(args_jit[0], np.ndarray):
        assert np.array_equal(args_jit[0], args_py[0])


def test_fully_disabled_path_matches(tmp_path):
    """Counters from a COSTLAB_DISABLE_NUMBA=1 subprocess match the jitted ones."""
    cases = [(alg, n, seed) for alg in catalog.ALGORITHMS for n, seed in [(9, 3), (24, 4)]]
    script = textwrap.dedent(
        """
        import json, sys
        from costlab import catalog
        out = []
        for alg, n, seed in json.load(sys.stdin):
            sample = catalog.run(alg, catalog.random_instance(alg, n, seed))
            out.append(sample.counter.to_array())
        json.dump(out, sys.stdout)
        """
    )
    env = dict(os.environ, **{DISABLE_ENV: "1"})
    proc = subprocess.run(
        [sys.executable, "-c", script],
        input=json.dumps(cases),
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    pure = json.loads(proc.stdout)
    for (alg, n, seed), expected in zip(cases, pure):
        sample = catalog.run(alg, catalog.random_instance(alg, n, seed))
        assert sample.counter.to_array() == expected, alg
