"""Serialization of run reports and prediction files.

Three report formats: "table" (human-readable, one row per repetition
plus an aggregate block), "csv" (config echo and failures as '#' comment
lines, then repetition rows; parse_report_csv round-trips it), and
"jsonl" (one typed JSON object per line).
"""

import csv
import io
import json

import numpy as np

from .experiment import RepetitionResult, RunReport

FLOAT_FMT = "%.17g"


def _require_results(report: RunReport):
    if not report.results:
        raise ValueError("report has no repetition results to emit")


def render_report(report: RunReport, fmt: str) -> str:
    if fmt == "table":
        return _render_table(report)
    if fmt == "csv":
        return _render_csv(report)
    if fmt == "jsonl":
        return _render_jsonl(report)
    raise ValueError(f"unknown report format {fmt!r}")


def emit_report(report: RunReport, fmt: str, path=None) -> str:
    """Render and optionally write the report; returns the rendered text."""
    text = render_report(report, fmt)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def _render_table(report: RunReport) -> str:
    _require_results(report)
    lines = [f"# {key} = {value}" for key, value in report.config_echo.items()]
    n = report.config_echo.get("n", "-")
    sigma_eps = report.config_echo.get("sigma_eps", "-")
    header = f"{'rep':>4}  {'n':>8}  {'sigma_eps':>9}  {'mwd':>12}  {'mae':>12}  {'fit_sec':>9}"
    lines.append(header)
    for r in report.results:
        lines.append(
            f"{r.index:>4}  {n!s:>8}  {sigma_eps!s:>9}  {r.mwd:>12.6g}  "
            f"{r.mae:>12.6g}  {r.fit_seconds:>9.3f}"
        )
    lines.append(
        f"{'mean':>4}  {n!s:>8}  {sigma_eps!s:>9}  {report.mwd_mean:>12.6g}  "
        f"{report.mae_mean:>12.6g}  {report.fit_seconds_mean:>9.3f}"
    )
    lines.append(
        f"{'std':>4}  {'':>8}  {'':>9}  {report.mwd_std:>12.6g}  {report.mae_std:>12.6g}"
    )
    for index, message in report.failures:
        lines.append(f"# repetition {index} FAILED: {message}")
    return "\n".join(lines) + "\n"


def _render_csv(report: RunReport) -> str:
    _require_results(report)
    buf = io.StringIO()
    for key, value in report.config_echo.items():
        buf.write(f"# {key} = {value}\n")
    for index, message in report.failures:
        buf.write(f"#! {index} {message}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["repetition", "mwd", "mae", "fit_seconds"])
    for r in report.results:
        writer.writerow(
            [r.index, FLOAT_FMT % r.mwd, FLOAT_FMT % r.mae, FLOAT_FMT % r.fit_seconds]
        )
    return buf.getvalue()


def parse_report_csv(text: str) -> RunReport:
    """Inverse of the csv renderer (config values come back as strings)."""
    report = RunReport()
    rows = []
    for line in text.splitlines():
        if line.startswith("#!"):
            index, _, message = line[2:].strip().partition(" ")
            report.failures.append((int(index), message))
        elif line.startswith("#"):
            key, _, value = line[1:].partition("=")
            report.config_echo[key.strip()] = value.strip()
        elif line.strip():
            rows.append(line)
    for record in csv.DictReader(rows):
        report.results.append(
            RepetitionResult(
                index=int(record["repetition"]),
                mwd=float(record["mwd"]),
                mae=float(record["mae"]),
                fit_seconds=float(record["fit_seconds"]),
            )
        )
    return report


def _render_jsonl(report: RunReport) -> str:
    _require_results(report)
    lines = [json.dumps({"record": "config", **report.config_echo})]
    for r in report.results:
        lines.append(
            json.dumps(
                {
                    "record": "repetition",
                    "repetition": r.index,
                    "mwd": r.mwd,
                    "mae": r.mae,
                    "fit_seconds": r.fit_seconds,
                }
            )
        )
    for index, message in report.failures:
        lines.append(json.dumps({"record": "failure", "repetition": index, "message": message}))
    lines.append(
        json.dumps(
            {
                "record": "aggregate",
                "mwd_mean": report.mwd_mean,
                "mwd_std": report.mwd_std,
                "mae_mean": report.mae_mean,
                "mae_std": report.mae_std,
                "fit_seconds_mean": report.fit_seconds_mean,
            }
        )
    )
    return "\n".join(lines) + "\n"


def write_predictions_csv(path, prediction) -> None:
    """Predictions file: one row per point with index, a_star, sigma_star."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "a_star", "sigma_star"])
        for i in range(prediction.n):
            writer.writerow(
                [i, FLOAT_FMT % prediction.a_star[i], FLOAT_FMT % prediction.sigma_star[i]]
            )


def read_predictions_csv(path):
    """Read a predictions file back; returns (a_star, sigma_star) ordered by index."""
    with open(path, "r", newline="", encoding="utf-8") as fh:
        records = list(csv.DictReader(fh))
    records.sort(key=lambda r: int(r["index"]))
    a = np.array([float(r["a_star"]) for r in records])
    s = np.array([float(r["sigma_star"]) for r in records])
    return a, s
