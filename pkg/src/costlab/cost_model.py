"""Elementary-operation taxonomy and exact tallies for a unit-cost RAM machine.

Every instrumented algorithm in the catalog charges its work to a
:class:`CostCounter` using a fixed six-kind taxonomy.  Tallies are exact
integers; a weighted total under the default all-ones weights is simply the
number of elementary operations executed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Mapping

U64_MAX = 2**64 - 1


class CounterOverflowError(OverflowError):
    """A tally would exceed the 64-bit counter width.

    Raised instead of saturating: a silently clamped tally would corrupt
    every growth-class fit computed downstream.
    """


class OpKind(enum.Enum):
    """Closed taxonomy of elementary operation kinds."""

    COMPARISON = "comparison"
    ASSIGNMENT = "assignment"
    ARITHMETIC = "arithmetic"
    ARRAY_ACCESS = "array_access"
    CALL = "call"
    OTHER = "other"


#: Fixed kind order shared with the kernel count arrays (see kernels.py).
OP_KINDS: tuple[OpKind, ...] = (
    OpKind.COMPARISON,
    OpKind.ASSIGNMENT,
    OpKind.ARITHMETIC,
    OpKind.ARRAY_ACCESS,
    OpKind.CALL,
    OpKind.OTHER,
)


@dataclass(frozen=True)
class CostWeights:
    """Non-negative unit-cost multipliers, one per operation kind."""

    weights: Mapping[OpKind, int | float]
    name: str = "custom"

    def __post_init__(self) -> None:
        vals = [self.weights.get(kind, 0) for kind in OpKind]
        if any(v < 0 for v in vals):
            raise ValueError("weights must be non-negative")
        if not any(v > 0 for v in vals):
            raise ValueError("at least one weight must be strictly positive")

    def __getitem__(self, kind: OpKind) -> int | float:
        return self.weights.get(kind, 0)

    @classmethod
    def all_ones(cls) -> "CostWeights":
        """Pure operation count: the quantity extremal instances extremize."""
        return cls({kind: 1 for kind in OpKind}, name="all_ones")

    @classmethod
    def comparisons_only(cls) -> "CostWeights":
        """Comparison count, the conventional measure for sorting."""
        return cls({OpKind.COMPARISON: 1}, name="comparisons_only")

    @classmethod
    def preset(cls, name: str) -> "CostWeights":
        try:
            return {"all_ones": cls.all_ones, "comparisons_only": cls.comparisons_only}[name]()
        except KeyError:
            raise ValueError(f"unknown weights preset {name!r}") from None


@dataclass
class CostCounter:
    """Per-kind operation tallies for a single run.

    Tallies only ever increase; each fits in an unsigned 64-bit range and
    overflow is a hard error.  A counter is owned by exactly one run; merging
    happens only after runs complete.
    """

    counts: dict[OpKind, int] = field(default_factory=dict)

    def charge(self, kind: OpKind, amount: int = 1) -> "CostCounter":
        """Increase the tally for `kind` by `amount` (>= 1)."""
        if not isinstance(kind, OpKind):
            raise TypeError(f"kind must be an OpKind, got {kind!r}")
        if amount < 1:
            raise ValueError(f"amount must be >= 1, got {amount}")
        new = self.counts.get(kind, 0) + amount
        if new > U64_MAX:
            raise CounterOverflowError(
                f"tally for {kind.value} would exceed the 64-bit counter range"
            )
        self.counts[kind] = new
        return self

    def total(self, weights: CostWeights | None = None) -> int | float:
        """Weighted sum of tallies; all-ones weights give the raw op count."""
        if weights is None:
            weights = CostWeights.all_ones()
        return sum(weights[kind] * tally for kind, tally in self.counts.items())

    def merge(self, other: "CostCounter") -> "CostCounter":
        """New counter with per-kind sums of both inputs (inputs unchanged)."""
        merged = CostCounter(dict(self.counts))
        for kind, tally in other.counts.items():
            new = merged.counts.get(kind, 0) + tally
            if new > U64_MAX:
                raise CounterOverflowError(
                    f"merged tally for {kind.value} would exceed the 64-bit counter range"
                )
            if new:
                merged.counts[kind] = new
        return merged

    def get(self, kind: OpKind) -> int:
        return self.counts.get(kind, 0)

    def items(self) -> Iterator[tuple[OpKind, int]]:
        return iter(self.counts.items())

    def as_dict(self) -> dict[str, int]:
        """Full six-kind mapping keyed by kind value (zeros included)."""
        return {kind.value: self.counts.get(kind, 0) for kind in OP_KINDS}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CostCounter):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    @classmethod
    def from_array(cls, arr) -> "CostCounter":
        """Build a counter from a kernel count array laid out as OP_KINDS."""
        if len(arr) != len(OP_KINDS):
            raise ValueError(f"expected {len(OP_KINDS)} tallies, got {len(arr)}")
        counts: dict[OpKind, int] = {}
        for kind, raw in zip(OP_KINDS, arr):
            tally = int(raw)
            if tally < 0 or tally > U64_MAX:
                raise CounterOverflowError(f"tally for {kind.value} out of 64-bit range")
            if tally:
                counts[kind] = tally
        return cls(counts)

    def to_array(self) -> list[int]:
        return [self.counts.get(kind, 0) for kind in OP_KINDS]
