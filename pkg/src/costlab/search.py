"""Black-box stochastic search for approximate extremal-cost instances.

Hill climbing with random restarts over the canonical instance space: start
points are drawn uniformly (plus any caller-supplied starts, e.g. a
heuristic witness), neighbors are proposed from a simple move set, and only
strict improvements are accepted: plateau moves are rejected so flat
landscapes (like ``min``'s) terminate instead of wandering.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import catalog
from .catalog import CostSample, Instance
from .cost_model import CostWeights

NEIGHBORHOODS = ("adjacent_swap", "random_swap", "scalar_tweak")
MODES = ("minimize", "maximize")


class SearchBudgetError(ValueError):
    """The budget was exhausted before a single evaluation happened."""


@dataclass(frozen=True)
class SearchConfig:
    mode: str
    budget: int
    restarts: int = 8
    seed: int = 0
    neighborhood: str | None = None  # default chosen per instance family
    weights: CostWeights = field(default_factory=CostWeights.all_ones)
    extra_starts: tuple[Instance, ...] = ()

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.budget < 1:
            raise SearchBudgetError("search budget must allow at least one evaluation")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.budget < self.restarts:
            raise ValueError("budget must be >= restarts")
        if self.neighborhood is not None and self.neighborhood not in NEIGHBORHOODS:
            raise ValueError(f"unknown neighborhood {self.neighborhood!r}")


@dataclass(frozen=True)
class SearchOutcome:
    instance: Instance
    cost: float
    evaluations_used: int
    trajectory: tuple[tuple[int, float], ...]
    sample: CostSample


def _default_neighborhood(algorithm: str) -> str:
    return "random_swap" if catalog.family(algorithm) == "permutation" else "scalar_tweak"


def _check_neighborhood(algorithm: str, neighborhood: str) -> None:
    fam = catalog.family(algorithm)
    if fam == "permutation" and neighborhood == "scalar_tweak":
        raise ValueError("scalar_tweak does not apply to permutation instances")
    if fam != "permutation" and neighborhood != "scalar_tweak":
        raise ValueError(f"{neighborhood} does not apply to {fam} instances")


def _neighbor(algorithm: str, inst: Instance, n: int, neighborhood: str, rng) -> Instance:
    tag = "searched"
    if neighborhood in ("adjacent_swap", "random_swap"):
        data = inst.data.copy()
        if neighborhood == "adjacent_swap":
            i = int(rng.integers(0, n - 1))
            j = i + 1
        else:
            i = int(rng.integers(0, n))
            j = int(rng.integers(0, n - 1))
            if j >= i:
                j += 1
        data[i], data[j] = data[j], data[i]
        return Instance(data, n, domain_tag=tag)
    if algorithm == "insert":
        rank = catalog.insert_rank(inst)
        delta = 1 if rng.integers(0, 2) else -1
        rank = rank + delta
        if rank < 0:
            rank = 1
        elif rank > n:
            rank = n - 1
        x = n + 1 if rank == 0 else n - rank
        return Instance(inst.data.copy(), n, key=x, domain_tag=tag)
    if algorithm == "binary_search":
        key = int(inst.key)  # type: ignore[arg-type]
        delta = 1 if rng.integers(0, 2) else -1
        key = key + delta
        if key < 0:
            key = 1
        elif key > n + 1:
            key = n
        return Instance(inst.data.copy(), n, key=key, domain_tag=tag)
    # euclid_gcd: perturb one operand within [1, n]
    a, b = int(inst.data[0]), int(inst.data[1])
    which = int(rng.integers(0, 2))
    delta = 1 if rng.integers(0, 2) else -1
    if which == 0:
        a = min(n, max(1, a + delta))
    else:
        b = min(n, max(1, b + delta))
    return Instance(np.array([a, b], dtype=np.int64), max(a, b), domain_tag=tag)


def _stall_limit(algorithm: str, n: int, neighborhood: str) -> int:
    if neighborhood == "random_swap":
        moves = n * (n - 1) // 2
    elif neighborhood == "adjacent_swap":
        moves = n - 1
    else:
        moves = 4
    return max(24, min(3 * moves, 400))


def search_extremal(algorithm: str, n: int, config: SearchConfig) -> SearchOutcome:
    """Best instance found by seeded hill climbing with restarts.

    Deterministic in ``config.seed``; the best-so-far trajectory is monotone
    by construction.
    """
    catalog.check_algorithm(algorithm)
    if n < 2:
        raise ValueError("search needs n >= 2")
    neighborhood = config.neighborhood or _default_neighborhood(algorithm)
    _check_neighborhood(algorithm, neighborhood)
    maximize = config.mode == "maximize"
    rng = np.random.default_rng(np.random.SeedSequence((int(config.seed), n, 0x5EA2C4)))
    stall_limit = _stall_limit(algorithm, n, neighborhood)

    evals = 0
    best_inst: Instance | None = None
    best_cost = 0.0
    trajectory: list[tuple[int, float]] = []

    def evaluate(inst: Instance) -> float:
        nonlocal evals
        evals += 1
        sample = catalog.run(algorithm, inst.with_tag("searched"))
        return float(sample.counter.total(config.weights))

    def better(challenger: float, incumbent: float) -> bool:
        return challenger > incumbent if maximize else challenger < incumbent

    for restart in range(config.restarts):
        remaining = config.budget - evals
        if remaining <= 0:
            break
        # evenly slice the remaining budget over the remaining restarts, so a
        # search with restarts == budget degenerates to pure random sampling
        slice_budget = max(1, remaining // (config.restarts - restart))
        if restart < len(config.extra_starts):
            start = config.extra_starts[restart].with_tag("searched")
        else:
            start = catalog.random_instance(
                algorithm, n, int(rng.integers(0, 2**32))
            ).with_tag("searched")
        current = start
        current_cost = evaluate(current)
        spent = 1
        if best_inst is None or better(current_cost, best_cost):
            best_inst = current
            best_cost = current_cost
            trajectory.append((evals, best_cost))
        stall = 0
        while spent < slice_budget and stall < stall_limit:
            cand = _neighbor(algorithm, current, n, neighborhood, rng)
            cand_cost = evaluate(cand)
            spent += 1
            if better(cand_cost, current_cost):
                current = cand
                current_cost = cand_cost
                stall = 0
                if better(current_cost, best_cost):
                    best_inst = current
                    best_cost = current_cost
                    trajectory.append((evals, best_cost))
            else:
                stall += 1

    if best_inst is None:
        raise SearchBudgetError("budget exhausted before any evaluation")
    sample = catalog.run(algorithm, best_inst.with_tag("searched"))
    return SearchOutcome(
        instance=best_inst,
        cost=best_cost,
        evaluations_used=evals,
        trajectory=tuple(trajectory),
        sample=sample,
    )
