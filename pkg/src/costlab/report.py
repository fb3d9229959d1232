"""Report assembly and serialization (JSON canonical, CSV flat samples).

Reports are deterministic: keys are sorted, every random draw is derived
from the echoed seed, and no timestamps are embedded, so identical configs
serialize to identical bytes.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import asdict
from importlib import resources

from . import __version__, fitter
from .catalog import CostSample, Instance
from .classifier import AverageResult, ComplexityBand, ExperimentConfig, Verdict
from .cost_model import OP_KINDS, CostWeights
from .fitter import CostSeries, FitResult
from .search import SearchConfig, SearchOutcome

SCHEMA_ID = "costlab-report/v1"

#: Fixed CSV column order (documented external interface).
CSV_HEADER = (
    "algorithm,n,instance_kind,trial,seed,"
    "comparisons,assignments,arithmetic,array_access,call,other,total"
)

#: Instances up to this many elements embed their full data in JSON reports.
INSTANCE_DATA_BOUND = 64


def schema_path():
    """Filesystem path of the bundled report JSON schema."""
    return resources.files("costlab") / "schemas" / "report.schema.json"


def load_schema() -> dict:
    with schema_path().open("r", encoding="utf-8") as fh:
        return json.load(fh)


def _tool_block() -> dict:
    return {"name": "costlab", "version": __version__}


def _fitter_block(tolerance: float) -> dict:
    return {
        "tolerance": tolerance,
        "tail_fraction": fitter.TAIL_FRACTION,
        "min_points": fitter.MIN_POINTS,
        "ladder": [g.id for g in fitter.ladder()],
    }


def config_block(config: ExperimentConfig) -> dict:
    block = asdict(config)
    block["grid"] = list(config.grid())
    return block


def fit_block(fit: FitResult) -> dict:
    return {
        "class": fit.growth.id,
        "resolved": fit.resolved,
        "constant": fit.constant,
        "b": fit.b,
        "a": fit.a,
        "n0": fit.n0,
        "max_tail_deviation": fit.max_tail_deviation,
    }


def band_block(band: ComplexityBand | None) -> dict | None:
    if band is None:
        return None
    return {
        "lower": band.lower.id,
        "upper": band.upper.id,
        "b": band.b,
        "a": band.a,
        "n0": band.n0,
        "minimal": band.minimal,
        "degenerate": band.degenerate,
    }


def series_block(series: CostSeries) -> list[list[float]]:
    return [[int(n), float(c)] for n, c in zip(series.ns, series.costs)]


def sample_block(sample: CostSample, weights: CostWeights) -> dict:
    return {
        "algorithm": sample.algorithm,
        "n": sample.n,
        "instance_kind": sample.instance_kind,
        "trial": sample.trial,
        "seed": sample.seed,
        "counts": sample.counter.as_dict(),
        "total": sample.counter.total(weights),
    }


def instance_block(instance: Instance) -> dict:
    data = instance.data
    digest = hashlib.sha256(data.tobytes()).hexdigest()
    block: dict = {
        "n": instance.n,
        "key": instance.key,
        "domain_tag": instance.domain_tag,
        "length": int(data.shape[0]),
        "data_sha256": digest,
    }
    if data.shape[0] <= INSTANCE_DATA_BOUND:
        block["data"] = [int(v) for v in data]
    return block


def verdict_block(verdict: Verdict) -> dict:
    return {
        "algorithm": verdict.algorithm,
        "homogeneous": verdict.homogeneous,
        "inconclusive": verdict.inconclusive,
        "witness_certified": verdict.witness_certified,
        "band": band_block(verdict.band),
        "best_fit": fit_block(verdict.best_fit),
        "worst_fit": fit_block(verdict.worst_fit),
        "average_fit": fit_block(verdict.average_fit),
        "gap_by_n": [
            {"n": g.n, "comparisons_gap": g.comparisons_gap, "total_gap": g.total_gap}
            for g in verdict.gap_by_n
        ],
        "average_by_n": [
            {
                "n": p.n,
                "mc_mean": p.mc_mean,
                "mc_std": p.mc_std,
                "trials": p.trials,
                "exact_mean": p.exact_mean,
            }
            for p in verdict.average_points
        ],
        "series": {
            "best": series_block(verdict.best_series),
            "worst": series_block(verdict.worst_series),
            "average": series_block(verdict.average_series),
        },
    }


def classify_report(verdict: Verdict) -> dict:
    weights = verdict.config.weights()
    return {
        "schema": SCHEMA_ID,
        "tool": _tool_block(),
        "command": "classify",
        "config": config_block(verdict.config),
        "fitter_params": _fitter_block(verdict.config.tolerance),
        "verdict": verdict_block(verdict),
        "samples": [sample_block(s, weights) for s in verdict.samples],
    }


def run_report(
    algorithm: str,
    instance_kind: str,
    n: int,
    seed: int,
    weights: CostWeights,
    sample: CostSample,
    instance: Instance,
) -> dict:
    return {
        "schema": SCHEMA_ID,
        "tool": _tool_block(),
        "command": "run",
        "config": {
            "algorithm": algorithm,
            "instance": instance_kind,
            "n": n,
            "seed": seed,
            "weights_preset": weights.name,
        },
        "instance": instance_block(instance),
        "sample": sample_block(sample, weights),
    }


def search_report(
    algorithm: str,
    n: int,
    config: SearchConfig,
    neighborhood: str,
    outcome: SearchOutcome,
    weights: CostWeights,
) -> dict:
    return {
        "schema": SCHEMA_ID,
        "tool": _tool_block(),
        "command": "search",
        "config": {
            "algorithm": algorithm,
            "n": n,
            "mode": config.mode,
            "budget": config.budget,
            "restarts": config.restarts,
            "seed": config.seed,
            "neighborhood": neighborhood,
            "weights_preset": weights.name,
        },
        "search": {
            "cost": outcome.cost,
            "evaluations_used": outcome.evaluations_used,
            "trajectory": [[int(i), float(c)] for i, c in outcome.trajectory],
            "best_instance": instance_block(outcome.instance),
        },
        "sample": sample_block(outcome.sample, weights),
    }


def average_report(
    config: ExperimentConfig, result: AverageResult, include_samples: bool = True
) -> dict:
    weights = config.weights()
    report = {
        "schema": SCHEMA_ID,
        "tool": _tool_block(),
        "command": "average",
        "config": config_block(config),
        "fitter_params": _fitter_block(config.tolerance),
        "average": {
            "fit": fit_block(result.fit),
            "by_n": [
                {
                    "n": p.n,
                    "mc_mean": p.mc_mean,
                    "mc_std": p.mc_std,
                    "trials": p.trials,
                    "exact_mean": p.exact_mean,
                }
                for p in result.points
            ],
            "series": series_block(result.series),
        },
    }
    if include_samples:
        report["samples"] = [sample_block(s, weights) for s in result.samples]
    return report


def exact_average_report(
    algorithm: str, n_min: int, n_max: int, weights: CostWeights, by_n: list[dict]
) -> dict:
    return {
        "schema": SCHEMA_ID,
        "tool": _tool_block(),
        "command": "average",
        "config": {
            "algorithm": algorithm,
            "n_min": n_min,
            "n_max": n_max,
            "weights_preset": weights.name,
            "exact": True,
        },
        "average": {"exact_by_n": by_n},
    }


def to_json_bytes(report: dict) -> bytes:
    return (json.dumps(report, indent=2, sort_keys=True) + "\n").encode("utf-8")


def samples_to_csv(samples: list[CostSample], weights: CostWeights) -> str:
    """Flat per-(n, kind, trial) sample rows under the documented header."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for s in samples:
        counts = s.counter.as_dict()
        writer.writerow(
            [
                s.algorithm,
                s.n,
                s.instance_kind,
                "" if s.trial is None else s.trial,
                "" if s.seed is None else s.seed,
                *[counts[k.value] for k in OP_KINDS],
                s.counter.total(weights),
            ]
        )
    return buf.getvalue()
