"""Command-line entry point: classify, run, search, average.

Exit codes: 0 = verdict/result produced, 1 = usage error, 2 = inconclusive
(an unresolved growth-class fit), 3 = internal counter overflow.

The default seed is 0 and can be overridden with the COSTLAB_SEED
environment variable; every report echoes its full configuration and is
byte-identical across repeated invocations with the same flags.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import catalog, classifier, report, search
from .catalog import check_algorithm
from .classifier import ExperimentConfig, average_class, classify, exact_mean
from .cost_model import CostWeights, CounterOverflowError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONCLUSIVE = 2
EXIT_OVERFLOW = 3

SEED_ENV = "COSTLAB_SEED"

#: Algorithms with a quadratic worst case get a smaller default n-range so
#: the default experiment stays desk-scale; override with --n-max.
DEFAULT_N_MAX_OVERRIDES = {
    "quicksort_first_pivot": 16384,
    "insertion_sort": 16384,
}
DEFAULT_N_MIN = 256
DEFAULT_N_MAX = 524288


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "").strip()
    if not raw:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise _UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _build_parser() -> _Parser:
    parser = _Parser(prog="costlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: _Parser) -> None:
        p.add_argument("algorithm", help=f"one of: {', '.join(catalog.ALGORITHMS)}")
        p.add_argument("--seed", type=int, default=None, help=f"RNG seed (default {SEED_ENV} or 0)")
        p.add_argument(
            "--weights",
            choices=classifier.WEIGHT_PRESETS,
            default="all_ones",
            help="cost weighting preset",
        )
        p.add_argument("--output", metavar="PATH", default=None, help="write report to PATH")

    def add_grid(p: _Parser) -> None:
        p.add_argument("--n-min", type=int, default=None)
        p.add_argument("--n-max", type=int, default=None)
        p.add_argument("--points", type=int, default=12, help="geometric grid size")
        p.add_argument("--trials", type=int, default=64, help="random trials per dimension")
        p.add_argument("--tolerance", type=float, default=0.15, help="tail-ratio spread tolerance")

    p_classify = sub.add_parser("classify", help="homogeneity verdict with band and gaps")
    add_common(p_classify)
    add_grid(p_classify)
    p_classify.add_argument("--search-budget", type=int, default=48)
    p_classify.add_argument("--search-restarts", type=int, default=2)
    p_classify.add_argument("--out", choices=classifier.OUTPUT_FORMATS, default="json")

    p_run = sub.add_parser("run", help="one instrumented run on a chosen instance")
    add_common(p_run)
    p_run.add_argument("--instance", choices=("best", "worst", "random"), required=True)
    p_run.add_argument("--n", type=int, required=True, help="instance dimension")
    p_run.add_argument("--out", choices=classifier.OUTPUT_FORMATS, default="json")

    p_search = sub.add_parser("search", help="hill-climb for an extremal instance")
    add_common(p_search)
    p_search.add_argument("--mode", choices=("min", "max", "minimize", "maximize"), required=True)
    p_search.add_argument("--n", type=int, required=True)
    p_search.add_argument("--budget", type=int, default=500, help="total run evaluations")
    p_search.add_argument("--restarts", type=int, default=8)
    p_search.add_argument("--neighborhood", choices=search.NEIGHBORHOODS, default=None)

    p_avg = sub.add_parser("average", help="average-case class via seeded random trials")
    add_common(p_avg)
    add_grid(p_avg)
    p_avg.add_argument(
        "--exact",
        action="store_true",
        help="exact enumerated means for every n up to 8 (no Monte Carlo)",
    )

    return parser


def _emit(payload: bytes, output: str | None) -> None:
    if output is None:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    else:
        with open(output, "wb") as fh:
            fh.write(payload)


def _experiment_config(args, algorithm: str) -> ExperimentConfig:
    n_min = args.n_min if args.n_min is not None else DEFAULT_N_MIN
    n_max = args.n_max
    if n_max is None:
        n_max = DEFAULT_N_MAX_OVERRIDES.get(algorithm, DEFAULT_N_MAX)
    kwargs = dict(
        algorithm=algorithm,
        n_min=n_min,
        n_max=n_max,
        points=args.points,
        trials=args.trials,
        tolerance=args.tolerance,
        seed=args.seed if args.seed is not None else _default_seed(),
        weights_preset=args.weights,
    )
    if hasattr(args, "out"):
        kwargs["output_format"] = args.out
    if hasattr(args, "search_budget"):
        kwargs["search_budget"] = args.search_budget
        kwargs["search_restarts"] = args.search_restarts
    try:
        return ExperimentConfig(**kwargs)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _cmd_classify(args) -> int:
    algorithm = check_algorithm(args.algorithm)
    config = _experiment_config(args, algorithm)
    verdict = classify(algorithm, config)
    if config.output_format == "csv":
        payload = report.samples_to_csv(list(verdict.samples), config.weights()).encode("utf-8")
    else:
        payload = report.to_json_bytes(report.classify_report(verdict))
    _emit(payload, args.output)
    return EXIT_INCONCLUSIVE if verdict.inconclusive else EXIT_OK


def _cmd_run(args) -> int:
    algorithm = check_algorithm(args.algorithm)
    if args.n < 2:
        raise _UsageError("--n must be >= 2")
    seed = args.seed if args.seed is not None else _default_seed()
    weights = CostWeights.preset(args.weights)
    if args.instance == "best":
        instance = catalog.best_witness(algorithm, args.n)
    elif args.instance == "worst":
        instance = catalog.worst_witness(algorithm, args.n)
    else:
        instance = catalog.random_instance(algorithm, args.n, seed)
    sample = catalog.run(algorithm, instance)
    if args.out == "csv":
        payload = report.samples_to_csv([sample], weights).encode("utf-8")
    else:
        payload = report.to_json_bytes(
            report.run_report(algorithm, args.instance, args.n, seed, weights, sample, instance)
        )
    _emit(payload, args.output)
    return EXIT_OK


def _cmd_search(args) -> int:
    algorithm = check_algorithm(args.algorithm)
    if args.n < 2:
        raise _UsageError("--n must be >= 2")
    seed = args.seed if args.seed is not None else _default_seed()
    mode = {"min": "minimize", "max": "maximize"}.get(args.mode, args.mode)
    weights = CostWeights.preset(args.weights)
    try:
        config = search.SearchConfig(
            mode=mode,
            budget=args.budget,
            restarts=args.restarts,
            seed=seed,
            neighborhood=args.neighborhood,
            weights=weights,
        )
        outcome = search.search_extremal(algorithm, args.n, config)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    neighborhood = args.neighborhood or (
        "random_swap" if catalog.family(algorithm) == "permutation" else "scalar_tweak"
    )
    payload = report.to_json_bytes(
        report.search_report(algorithm, args.n, config, neighborhood, outcome, weights)
    )
    _emit(payload, args.output)
    return EXIT_OK


def _cmd_average(args) -> int:
    algorithm = check_algorithm(args.algorithm)
    weights = CostWeights.preset(args.weights)
    if args.exact:
        n_min = args.n_min if args.n_min is not None else 2
        n_max = args.n_max if args.n_max is not None else catalog.ENUMERATION_BOUND
        if n_max > catalog.ENUMERATION_BOUND:
            raise _UsageError(
                f"--exact enumerates every instance; limited to n <= {catalog.ENUMERATION_BOUND}"
            )
        if n_min < 2 or n_min > n_max:
            raise _UsageError("--exact needs 2 <= n-min <= n-max")
        by_n = [
            {"n": n, "exact_mean": exact_mean(algorithm, n, weights)}
            for n in range(n_min, n_max + 1)
        ]
        payload = report.to_json_bytes(
            report.exact_average_report(algorithm, n_min, n_max, weights, by_n)
        )
        _emit(payload, args.output)
        return EXIT_OK
    config = _experiment_config(args, algorithm)
    result = average_class(algorithm, config)
    payload = report.to_json_bytes(report.average_report(config, result))
    _emit(payload, args.output)
    return EXIT_INCONCLUSIVE if not result.fit.resolved else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {
            "classify": _cmd_classify,
            "run": _cmd_run,
            "search": _cmd_search,
            "average": _cmd_average,
        }[args.command]
        return handler(args)
    except _UsageError as exc:
        print(f"costlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except catalog.UnknownAlgorithmError as exc:
        print(f"costlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CounterOverflowError as exc:
        print(f"costlab: overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW


if __name__ == "__main__":
    sys.exit(main())
