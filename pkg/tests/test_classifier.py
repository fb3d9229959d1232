import numpy as np
import pytest

from costlab import catalog, classifier, fitter
from costlab.classifier import (
    BandOrderError,
    ComplexityBand,
    ExperimentConfig,
    UnresolvedFitError,
    band_membership,
    classify,
    derive_seed,
    exact_mean,
    inhomogeneity_gap,
    minimal_band,
    monte_carlo_mean,
)
from costlab.cost_model import CostWeights, OpKind
from costlab.fitter import CostSeries, FitResult, growth_class

GRID = tuple(2**k for k in range(8, 20))


def make_fit(class_id, constant=1.0, b=0.9, a=1.1, n0=2**14, resolved=True):
    return FitResult(
        growth=growth_class(class_id),
        constant=constant,
        b=b,
        a=a,
        n0=n0,
        max_tail_deviation=a / b - 1.0,
        resolved=resolved,
    )


SMALL = dict(n_min=256, n_max=4096, points=8, trials=8)


def test_minimal_band_examples():
    band = minimal_band(make_fit("const"), make_fit("n"))
    assert (band.lower.id, band.upper.id) == ("const", "n")
    assert band.minimal and not band.degenerate

    degenerate = minimal_band(make_fit("n"), make_fit("n"))
    assert degenerate.degenerate and degenerate.lower.id == "n"

    with pytest.raises(BandOrderError):
        minimal_band(make_fit("n"), make_fit("const"))
    with pytest.raises(UnresolvedFitError):
        minimal_band(make_fit("n", resolved=False), make_fit("n"))


def test_band_membership_synthetic():
    band = ComplexityBand(
        lower=growth_class("const"), upper=growth_class("n"), b=1.0, a=1.0, n0=2, minimal=True
    )
    ones = CostSeries.from_points((n, 1.0) for n in GRID)
    quad = CostSeries.from_points((n, float(n) ** 2) for n in GRID)
    assert band_membership(ones, band, 0.15) is True
    assert band_membership(quad, band, 0.15) is False


def test_band_membership_random_insert_series():
    config = ExperimentConfig(algorithm="insert")
    verdict = classify("insert", config)
    assert verdict.band is not None
    for seed in range(100):
        pts = []
        for n in config.grid():
            inst = catalog.random_instance("insert", n, derive_seed(seed, "insert", n, 0, 9))
            pts.append((n, float(catalog.run("insert", inst).counter.total())))
        series = CostSeries.from_points(pts)
        assert band_membership(series, verdict.band, config.tolerance)


def test_classify_insert_small_grid():
    verdict = classify("insert", ExperimentConfig(algorithm="insert", **SMALL))
    assert verdict.homogeneous is False
    assert (verdict.band.lower.id, verdict.band.upper.id) == ("const", "n")
    assert verdict.band.minimal and verdict.witness_certified
    assert not verdict.inconclusive


def test_classify_min_small_grid():
    verdict = classify("min", ExperimentConfig(algorithm="min", **SMALL))
    assert verdict.homogeneous is True
    assert verdict.band.degenerate and verdict.band.lower.id == "n"
    assert verdict.average_fit.class_id == "n"


def test_classify_embeds_reproducible_samples():
    config = ExperimentConfig(algorithm="euclid_gcd", **SMALL)
    v1 = classify("euclid_gcd", config)
    v2 = classify("euclid_gcd", config)
    assert v1 == v2
    kinds = {s.instance_kind for s in v1.samples}
    assert kinds == {"best_witness", "worst_witness", "random"}


def test_classify_heuristic_side_uses_search():
    config = ExperimentConfig(algorithm="heapsort", **SMALL)
    verdict = classify("heapsort", config)
    kinds = {s.instance_kind for s in verdict.samples}
    assert "searched" in kinds
    assert verdict.witness_certified is False


def test_insert_average_exact_mean_is_half_n():
    # the mean number of swaps over the n + 1 insertion ranks is exactly n/2
    for n in (3, 5, 8):
        swaps = [
            (catalog.run("insert", inst).counter.get(OpKind.ASSIGNMENT) - 1) // 3
            for inst in catalog.enumerate_instances("insert", n)
        ]
        assert len(swaps) == n + 1
        assert sum(swaps) / (n + 1) == n / 2


def test_min_exact_mean_comparisons():
    assert exact_mean("min", 3, CostWeights.comparisons_only()) == 2.0


def test_inhomogeneity_gap_examples():
    config = ExperimentConfig(algorithm="insert")
    gap = inhomogeneity_gap("insert", 4, config)
    assert gap.comparisons_gap == 3  # c_w = 4 element comparisons, c_b = 1
    assert inhomogeneity_gap("min", 16, ExperimentConfig(algorithm="min")).comparisons_gap == 0
    gaps = [inhomogeneity_gap("insert", n, config).comparisons_gap for n in (4, 8, 16, 32)]
    assert gaps == sorted(gaps)  # non-decreasing in n


def test_gap_series_fits_within_band_upper():
    # for the Θ(1, n) algorithm the gap grows within the n rung
    verdict = classify("insert", ExperimentConfig(algorithm="insert"))
    series = CostSeries.from_points(
        (g.n, g.comparisons_gap) for g in verdict.gap_by_n if g.comparisons_gap > 0
    )
    fit = fitter.fit_class(series, verdict.config.tolerance)
    assert fit.resolved
    assert fit.growth.rank <= verdict.band.upper.rank


def test_monte_carlo_within_five_se_of_exact():
    for algorithm in ("insert", "min", "euclid_gcd"):
        for n in (4, 8):
            exact = exact_mean(algorithm, n)
            mc, std = monte_carlo_mean(algorithm, n, trials=256, seed=11)
            se = std / np.sqrt(256)
            if std == 0.0:
                assert mc == exact
            else:
                assert abs(mc - exact) <= 5 * se


def test_derive_seed_distinct_and_stable():
    a = derive_seed(0, "min", 16, 0, 1)
    assert a == derive_seed(0, "min", 16, 0, 1)
    others = {
        derive_seed(0, "min", 16, 1, 1),
        derive_seed(0, "min", 32, 0, 1),
        derive_seed(1, "min", 16, 0, 1),
        derive_seed(0, "insert", 16, 0, 1),
        derive_seed(0, "min", 16, 0, 2),
    }
    assert a not in others and len(others) == 5


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(algorithm="min", n_min=1)
    with pytest.raises(ValueError):
        ExperimentConfig(algorithm="min", n_min=256, n_max=512)  # < 4x spread
    with pytest.raises(ValueError):
        ExperimentConfig(algorithm="min", points=7)
    with pytest.raises(ValueError):
        ExperimentConfig(algorithm="min", tolerance=1.0)
    with pytest.raises(ValueError):
        ExperimentConfig(algorithm="min", trials=0)
    with pytest.raises(ValueError):
        ExperimentConfig(algorithm="min", weights_preset="nope")
    with pytest.raises(ValueError):
        ExperimentConfig(algorithm="nosuch")


def test_partition_verdict_field():
    # every resolved verdict decides homogeneous as exactly one of True/False
    for algorithm in ("min", "insert", "euclid_gcd"):
        verdict = classify(algorithm, ExperimentConfig(algorithm=algorithm, **SMALL))
        assert verdict.homogeneous in (True, False)
        assert verdict.inconclusive is False
