"""costlab: an empirical complexity laboratory.

Counts elementary operations of instrumented algorithms under a unit-cost
RAM model, fits best/worst/average cost series to a ladder of growth
classes, and classifies each algorithm as homogeneous or non-homogeneous
with a minimal complexity band.
"""

from .catalog import (
    ALGORITHMS,
    CostSample,
    Instance,
    best_witness,
    enumerate_instances,
    random_instance,
    run,
    witness_certification,
    worst_witness,
)
from .classifier import (
    AverageResult,
    ComplexityBand,
    ExperimentConfig,
    Verdict,
    average_class,
    band_membership,
    classify,
    inhomogeneity_gap,
    minimal_band,
)
from .cost_model import CostCounter, CostWeights, CounterOverflowError, OpKind
from .fitter import CostSeries, FitResult, GrowthClass, fit_class, ladder, member_of
from .search import SearchConfig, SearchOutcome, search_extremal

__version__ = "1.0.0"

__all__ = [
    "ALGORITHMS",
    "AverageResult",
    "ComplexityBand",
    "CostCounter",
    "CostSample",
    "CostSeries",
    "CostWeights",
    "CounterOverflowError",
    "ExperimentConfig",
    "FitResult",
    "GrowthClass",
    "Instance",
    "OpKind",
    "SearchConfig",
    "SearchOutcome",
    "Verdict",
    "average_class",
    "band_membership",
    "best_witness",
    "classify",
    "enumerate_instances",
    "fit_class",
    "inhomogeneity_gap",
    "ladder",
    "member_of",
    "minimal_band",
    "random_instance",
    "run",
    "search_extremal",
    "witness_certification",
    "worst_witness",
    "__version__",
]
