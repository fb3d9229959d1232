"""Growth-class inference via a two-sided tail-ratio sandwich test.

A cost series belongs to a growth class g when the ratios cost/g(n) on the
largest sampled dimensions stay within a bounded multiplicative spread.  The
test's byproducts are exactly the sandwich constants: b (smallest tail
ratio), a (largest tail ratio), and n0 (first tail dimension), so every
accepted fit satisfies ``b*g(n) <= cost <= a*g(n)`` on all sampled n >= n0 by
construction.

Any finite-sample membership test is a proxy for an asymptotic statement;
the tolerance and tail fraction quantify the proxy and are echoed into every
report rather than hidden.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

#: Minimum number of points a fittable series must carry.
MIN_POINTS = 8

#: Fraction of points (the largest-n half) used by the membership test.
TAIL_FRACTION = 0.5

#: Default spread tolerance for the tail-ratio test.
DEFAULT_TOLERANCE = 0.15


@dataclass(frozen=True)
class GrowthClass:
    """One rung of the growth ladder: a symbolic id plus its evaluator."""

    id: str
    rank: int

    def evaluate(self, n):
        """g(n) as float; positive for all n >= 2."""
        x = np.asarray(n, dtype=np.float64)
        if self.id == "const":
            return np.ones_like(x)
        if self.id == "log_n":
            return np.log2(x)
        if self.id == "n":
            return x
        if self.id == "n_log_n":
            return x * np.log2(x)
        if self.id == "n_sq":
            return x**2
        if self.id == "n_cube":
            return x**3
        raise ValueError(f"unknown growth class {self.id!r}")


_LADDER: tuple[GrowthClass, ...] = (
    GrowthClass("const", 0),
    GrowthClass("log_n", 1),
    GrowthClass("n", 2),
    GrowthClass("n_log_n", 3),
    GrowthClass("n_sq", 4),
    GrowthClass("n_cube", 5),
)

_BY_ID = {g.id: g for g in _LADDER}


def ladder() -> tuple[GrowthClass, ...]:
    """The six-rung ladder in strictly increasing asymptotic order."""
    return _LADDER


def growth_class(class_id: str) -> GrowthClass:
    try:
        return _BY_ID[class_id]
    except KeyError:
        raise ValueError(f"unknown growth class {class_id!r}") from None


@dataclass(frozen=True)
class CostSeries:
    """A sampled cost function t(n): strictly increasing n, positive costs."""

    ns: tuple[int, ...]
    costs: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.ns) != len(self.costs):
            raise ValueError("ns and costs must have equal length")
        if len(self.ns) < MIN_POINTS:
            raise ValueError(f"a cost series needs >= {MIN_POINTS} points, got {len(self.ns)}")
        if self.ns[0] < 2:
            raise ValueError("all dimensions must be >= 2")
        if any(b <= a for a, b in zip(self.ns, self.ns[1:])):
            raise ValueError("dimensions must be strictly increasing")
        if any(c <= 0 for c in self.costs):
            raise ValueError("all costs must be strictly positive")

    @classmethod
    def from_points(cls, points: Iterable[tuple[int, float]]) -> "CostSeries":
        pts = sorted(points)
        return cls(tuple(int(n) for n, _ in pts), tuple(float(c) for _, c in pts))

    def scaled(self, k: float) -> "CostSeries":
        return CostSeries(self.ns, tuple(k * c for c in self.costs))

    def tail(self) -> tuple[np.ndarray, np.ndarray]:
        """The largest-n half of the points (>= MIN_POINTS/2 points)."""
        start = len(self.ns) // 2
        return (
            np.asarray(self.ns[start:], dtype=np.int64),
            np.asarray(self.costs[start:], dtype=np.float64),
        )

    def points(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.asarray(self.ns, dtype=np.int64),
            np.asarray(self.costs, dtype=np.float64),
        )


@dataclass(frozen=True)
class FitResult:
    """Outcome of a membership test: the class plus its sandwich constants."""

    growth: GrowthClass
    constant: float
    b: float
    a: float
    n0: int
    max_tail_deviation: float
    resolved: bool = True

    @property
    def class_id(self) -> str:
        return self.growth.id


def _tail_ratios(series: CostSeries, growth: GrowthClass) -> tuple[np.ndarray, int]:
    tail_ns, tail_costs = series.tail()
    ratios = tail_costs / growth.evaluate(tail_ns)
    return ratios, int(tail_ns[0])


def _check_tolerance(tolerance: float) -> None:
    if not (0.0 < tolerance < 1.0):
        raise ValueError(f"tolerance must lie in (0, 1), got {tolerance}")


def member_of(
    series: CostSeries, growth: GrowthClass, tolerance: float = DEFAULT_TOLERANCE
) -> FitResult | None:
    """Tail-ratio membership test; absence is a result, not an error."""
    _check_tolerance(tolerance)
    ratios, n0 = _tail_ratios(series, growth)
    spread = float(ratios.max() / ratios.min())
    deviation = spread - 1.0
    if deviation > tolerance:
        return None
    return FitResult(
        growth=growth,
        constant=float(np.exp(np.mean(np.log(ratios)))),
        b=float(ratios.min()),
        a=float(ratios.max()),
        n0=n0,
        max_tail_deviation=deviation,
        resolved=True,
    )


def fit_class(series: CostSeries, tolerance: float = DEFAULT_TOLERANCE) -> FitResult:
    """Smallest ladder rung accepting the series, or an unresolved best-effort fit."""
    _check_tolerance(tolerance)
    best: tuple[float, GrowthClass] | None = None
    for growth in _LADDER:
        ratios, n0 = _tail_ratios(series, growth)
        spread = float(ratios.max() / ratios.min())
        deviation = spread - 1.0
        if deviation <= tolerance:
            return FitResult(
                growth=growth,
                constant=float(np.exp(np.mean(np.log(ratios)))),
                b=float(ratios.min()),
                a=float(ratios.max()),
                n0=n0,
                max_tail_deviation=deviation,
                resolved=True,
            )
        if best is None or deviation < best[0]:
            best = (deviation, growth)
    assert best is not None
    deviation, growth = best
    ratios, n0 = _tail_ratios(series, growth)
    return FitResult(
        growth=growth,
        constant=float(np.exp(np.mean(np.log(ratios)))),
        b=float(ratios.min()),
        a=float(ratios.max()),
        n0=n0,
        max_tail_deviation=deviation,
        resolved=False,
    )


def geometric_grid(n_min: int, n_max: int, points: int) -> tuple[int, ...]:
    """Geometrically spaced integer dimensions, deduplicated, endpoints exact."""
    if n_min < 2:
        raise ValueError("n_min must be >= 2")
    if n_max < n_min:
        raise ValueError("n_max must be >= n_min")
    if points < 2:
        raise ValueError("need at least two grid points")
    exponents = np.linspace(np.log2(n_min), np.log2(n_max), points)
    ns = sorted({int(round(2.0**e)) for e in exponents})
    return tuple(ns)
