"""Command-line entry point.

Subcommands: gen (emit a synthetic dataset CSV), fit (single fit ->
predictions CSV), bench (Monte-Carlo experiment -> report), tune (grid
search over beta/gamma), eval (metrics for a predictions file against a
dataset file). Exit code 0 on success; failures print one JSON error
line to stderr and exit 1.
"""

import argparse
import dataclasses
import json
import sys

from .config import load_config
from .datagen import write_dataset_csv
from .errors import EmptyTestSet, WeakregError
from .experiment import (
    ExperimentConfig,
    grid_search,
    prepare_dataset,
    run_experiment,
    run_single,
)
from .metrics import mae, mwd
from .regression import Prediction
from .report import (
    emit_report,
    read_predictions_csv,
    write_predictions_csv,
)
from .ingest import read_dataset_csv


def _load_base_config(args) -> ExperimentConfig:
    config = load_config(args.config) if args.config else ExperimentConfig()
    updates = {}
    if getattr(args, "seed", None) is not None:
        updates["master_seed"] = args.seed
    if getattr(args, "method", None) is not None:
        updates["method"] = args.method
    if getattr(args, "reps", None) is not None:
        updates["repetitions"] = args.reps
    if getattr(args, "n", None) is not None:
        updates["n"] = args.n
    if getattr(args, "workers", None) is not None:
        updates["workers"] = args.workers
    if updates:
        config = dataclasses.replace(config, **updates)
    return config


def _cmd_gen(args) -> int:
    config = _load_base_config(args)
    X, y_true, labels, _ = prepare_dataset(config)
    write_dataset_csv(args.out, X, y_true, labels)
    print(f"wrote {X.shape[0]} points to {args.out}")
    return 0


def _cmd_fit(args) -> int:
    config = _load_base_config(args)
    pred, _, _, seconds = run_single(config)
    write_predictions_csv(args.out, pred)
    print(f"fit {pred.n} points with {config.method} in {seconds:.3f}s -> {args.out}")
    return 0


def _cmd_bench(args) -> int:
    config = _load_base_config(args)
    report = run_experiment(config)
    if not report.results and report.failures:
        index, message = report.failures[0]
        raise WeakregError(
            f"all {len(report.failures)} repetitions failed; "
            f"repetition {index}: {message}"
        )
    text = emit_report(report, args.format, args.out)
    if args.out:
        print(f"wrote report to {args.out}")
    else:
        print(text, end="")
    return 1 if report.failures else 0


def _cmd_tune(args) -> int:
    config = _load_base_config(args)
    result = grid_search(config)
    lines = []
    if args.format == "jsonl":
        for beta, gamma, score in result.table:
            lines.append(json.dumps({"record": "cell", "beta": beta, "gamma": gamma, "score": score}))
        lines.append(
            json.dumps({"record": "best", "beta": result.best_beta, "gamma": result.best_gamma})
        )
    elif args.format == "csv":
        lines.append("beta,gamma,score")
        for beta, gamma, score in result.table:
            lines.append(f"{beta:.17g},{gamma:.17g},{score:.17g}")
        lines.append(f"# best beta={result.best_beta:.17g} gamma={result.best_gamma:.17g}")
    else:
        lines.append(f"{'beta':>12}  {'gamma':>12}  {'cv_score':>14}")
        for beta, gamma, score in result.table:
            lines.append(f"{beta:>12.6g}  {gamma:>12.6g}  {score:>14.8g}")
        lines.append(f"best: beta={result.best_beta:g} gamma={result.best_gamma:g}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote grid-search table to {args.out}")
    else:
        print(text, end="")
    return 0


def _cmd_eval(args) -> int:
    a_star, sigma_star = read_predictions_csv(args.predictions)
    _, y_true, _, masks = read_dataset_csv(args.dataset)
    pred = Prediction(a_star, sigma_star)
    test = masks.test
    if not test.any():
        raise EmptyTestSet("dataset file has no rows with role=test")
    scores = {
        "mwd": mwd(pred, y_true[test], test),
        "mae": mae(pred, y_true[test], test),
        "n_test": int(test.sum()),
    }
    if args.format == "jsonl":
        text = json.dumps(scores) + "\n"
    elif args.format == "csv":
        text = "metric,value\n" + "".join(f"{k},{v}\n" for k, v in scores.items())
    else:
        text = "".join(f"{k} = {v}\n" for k, v in scores.items())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return 0


def _add_common(sub, out_required=False):
    sub.add_argument("--config", help="INI config file")
    sub.add_argument("--seed", type=int, help="master seed override")
    sub.add_argument(
        "--method", choices=("wsr_lrcm", "ssr_rbf_dense"), help="method override"
    )
    sub.add_argument("--n", type=int, help="synthetic sample size override")
    sub.add_argument("--out", required=out_required, help="output file path")
    sub.add_argument(
        "--format", choices=("table", "csv", "jsonl"), default="table",
        help="output format",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakreg",
        description="Weakly supervised transductive regression experiments",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="emit a synthetic dataset CSV")
    _add_common(gen, out_required=True)

    fit = commands.add_parser("fit", help="single fit, emit predictions CSV")
    _add_common(fit, out_required=True)

    bench = commands.add_parser("bench", help="Monte-Carlo experiment")
    _add_common(bench)
    bench.add_argument("--reps", type=int, help="repetition count override")
    bench.add_argument("--workers", type=int, help="parallel repetition workers")

    tune = commands.add_parser("tune", help="grid-search beta/gamma by cross-validation")
    _add_common(tune)

    ev = commands.add_parser("eval", help="score a predictions file against a dataset file")
    ev.add_argument("--predictions", required=True, help="predictions CSV from fit")
    ev.add_argument("--dataset", required=True, help="dataset CSV with roles")
    ev.add_argument("--out", help="output file path")
    ev.add_argument(
        "--format", choices=("table", "csv", "jsonl"), default="table",
        help="output format",
    )

    gen.set_defaults(func=_cmd_gen)
    fit.set_defaults(func=_cmd_fit)
    bench.set_defaults(func=_cmd_bench)
    tune.set_defaults(func=_cmd_tune)
    ev.set_defaults(func=_cmd_eval)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (WeakregError, OSError, ValueError) as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
