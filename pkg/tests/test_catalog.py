import math

import numpy as np
import pytest

from costlab import catalog
from costlab.catalog import (
    EnumerationBoundError,
    Instance,
    InstanceContractError,
    UnknownAlgorithmError,
)
from costlab.cost_model import CostWeights, OpKind

ALL = CostWeights.all_ones()
CMP = CostWeights.comparisons_only()


def run_counts(algorithm, instance):
    return catalog.run(algorithm, instance).counter


def test_min_comparison_count():
    inst = Instance(np.array([3, 1, 2]), 3, domain_tag="enumerated")
    counter = run_counts("min", inst)
    assert counter.get(OpKind.COMPARISON) == 2  # always n - 1


def test_min_cost_is_instance_independent():
    totals = {
        run_counts("min", inst).total(ALL) for inst in catalog.enumerate_instances("min", 5)
    }
    assert len(totals) == 1


def test_insert_best_case_trace():
    inst = Instance(np.array([1, 2, 3]), 3, key=4, domain_tag="enumerated")
    counter = run_counts("insert", inst)
    assert counter.get(OpKind.COMPARISON) == 1  # one failing while-guard comparison
    assert counter.get(OpKind.ASSIGNMENT) == 1  # only the initial key placement: no swaps


def test_insert_worst_case_trace():
    inst = Instance(np.array([1, 2, 3]), 3, key=0, domain_tag="enumerated")
    counter = run_counts("insert", inst)
    assert counter.get(OpKind.COMPARISON) == 3  # the loop runs n times
    assert (counter.get(OpKind.ASSIGNMENT) - 1) // 3 == 3  # three full swaps


def test_insert_worst_n4_swap_count():
    counter = run_counts("insert", catalog.worst_witness("insert", 4))
    assert counter.get(OpKind.COMPARISON) == 4
    assert counter.get(OpKind.ASSIGNMENT) == 1 + 3 * 4  # init + 4 swaps


def test_euclid_remainder_chain():
    inst = Instance(np.array([21, 13]), 21, domain_tag="enumerated")
    counter = run_counts("euclid_gcd", inst)
    assert counter.get(OpKind.ARITHMETIC) == 6  # chain 21,13,8,5,3,2,1
    # operand order is canonicalized: the reversed pair costs the same
    rev = Instance(np.array([13, 21]), 21, domain_tag="enumerated")
    assert run_counts("euclid_gcd", rev) == counter


def test_witness_shapes():
    bw = catalog.best_witness("insert", 4)
    assert list(bw.data) == [1, 2, 3, 4] and bw.key == 5
    ww = catalog.worst_witness("insert", 4)
    assert list(ww.data) == [1, 2, 3, 4] and ww.key == 0
    assert list(catalog.worst_witness("quicksort_first_pivot", 8).data) == list(range(1, 9))
    eb = catalog.best_witness("euclid_gcd", 100)
    assert list(eb.data) == [100, 100]
    ew = catalog.worst_witness("euclid_gcd", 21)
    assert list(ew.data) == [21, 13]


def test_witness_requires_n_at_least_two():
    with pytest.raises(ValueError):
        catalog.best_witness("min", 1)


@pytest.mark.parametrize("algorithm", catalog.ALGORITHMS)
def test_random_instance_deterministic(algorithm):
    a = catalog.random_instance(algorithm, 9, 1234)
    b = catalog.random_instance(algorithm, 9, 1234)
    assert np.array_equal(a.data, b.data) and a.key == b.key
    assert a.seed == 1234 and a.domain_tag == "random"


def test_random_instance_domains():
    perm = catalog.random_instance("min", 5, 7)
    assert sorted(perm.data) == [1, 2, 3, 4, 5]
    ins = catalog.random_instance("insert", 6, 7)
    ranks = {catalog.insert_rank(catalog.random_instance("insert", 6, s)) for s in range(200)}
    assert ranks == set(range(7))  # all n + 1 ranks reachable
    assert list(ins.data) == [1, 2, 3, 4, 5, 6]
    pair = catalog.random_instance("euclid_gcd", 9, 7)
    assert 1 <= pair.data[0] <= 9 and 1 <= pair.data[1] <= 9
    key = catalog.random_instance("binary_search", 6, 7).key
    assert 0 <= key <= 7


def test_insert_rank_distribution_uniform():
    # rank histogram over many seeds stays within 3 sigma of the binomial law
    n, samples = 4, 100_000
    counts = np.zeros(n + 1, dtype=int)
    for seed in range(samples):
        counts[catalog.insert_rank(catalog.random_instance("insert", n, seed))] += 1
    p = 1.0 / (n + 1)
    sigma = math.sqrt(samples * p * (1 - p))
    assert (np.abs(counts - samples * p) <= 3 * sigma).all(), counts


def test_enumerate_counts():
    assert sum(1 for _ in catalog.enumerate_instances("insertion_sort", 3)) == 6
    assert sum(1 for _ in catalog.enumerate_instances("insert", 3)) == 4
    assert sum(1 for _ in catalog.enumerate_instances("euclid_gcd", 3)) == 9
    assert sum(1 for _ in catalog.enumerate_instances("binary_search", 3)) == 5


def test_enumerate_bound_refusal():
    with pytest.raises(EnumerationBoundError, match="8"):
        list(catalog.enumerate_instances("min", 9))


def test_exhaustive_minimum_validates_insert_witness():
    best = run_counts("insert", catalog.best_witness("insert", 5)).total(ALL)
    enum_min = min(
        run_counts("insert", inst).total(ALL)
        for inst in catalog.enumerate_instances("insert", 5)
    )
    assert best == enum_min


def test_contract_violations_rejected():
    with pytest.raises(InstanceContractError):
        catalog.run("insert", Instance(np.array([3, 1, 2]), 3, key=0))
    with pytest.raises(InstanceContractError):
        catalog.run("insert", Instance(np.array([1, 2, 3]), 3))  # key missing
    with pytest.raises(InstanceContractError):
        catalog.run("min", Instance(np.array([1, 1, 3]), 3))  # duplicate keys
    with pytest.raises(InstanceContractError):
        catalog.run("min", Instance(np.array([1, 2, 4]), 3))  # not 1..n
    with pytest.raises(InstanceContractError):
        catalog.run("euclid_gcd", Instance(np.array([0, 4]), 4))
    with pytest.raises(UnknownAlgorithmError):
        catalog.run("bogosort", Instance(np.array([1, 2]), 2))


@pytest.mark.parametrize("algorithm", catalog.ALGORITHMS)
def test_run_deterministic_and_verified(algorithm):
    inst = catalog.random_instance(algorithm, 12, 99)
    first = catalog.run(algorithm, inst)
    second = catalog.run(algorithm, inst)
    assert first.counter == second.counter
    assert first.instance_kind == "random"
    assert first.seed == 99


def test_run_functional_outputs():
    # spot-check the oracles on a couple of concrete runs
    data = np.array([4, 2, 5, 1, 3])
    sample = catalog.run("select_median_of_medians", Instance(data, 5, domain_tag="random"))
    assert sample.counter.total(ALL) > 0
    pair = Instance(np.array([12, 8]), 12, domain_tag="random")
    assert catalog.run("euclid_gcd", pair).counter.get(OpKind.ARITHMETIC) == 2  # 12,8,4,0


def test_witness_certification_table():
    cert = catalog.witness_certification
    assert cert("min") == (True, True)
    assert cert("insert") == (True, True)
    assert cert("quicksort_first_pivot") == (False, True)
    assert cert("floyd_heapify") == (True, False)
    assert cert("heapsort") == (False, False)
    assert cert("select_median_of_medians") == (False, False)
