import json
import subprocess
import sys

import numpy as np
import pytest

from weakreg.cli import main
from weakreg.ingest import read_dataset_csv
from weakreg.report import parse_report_csv, read_predictions_csv

CONFIG_1A = """
[data]
n = 300
sigma_eps = 0.1
delta = 0.1

[ensemble]
runs = 5

[run]
repetitions = 2
master_seed = 7
"""


@pytest.fixture
def config_path(tmp_path):
    path = tmp_path / "exp.ini"
    path.write_text(CONFIG_1A)
    return str(path)


def test_gen_fit_eval_chain(tmp_path, config_path, capsys):
    data_csv = str(tmp_path / "data.csv")
    pred_csv = str(tmp_path / "pred.csv")

    assert main(["gen", "--config", config_path, "--out", data_csv]) == 0
    X, y, labels, masks = read_dataset_csv(data_csv)
    assert X.shape == (300, 8)
    assert masks.test.sum() == 100

    assert main(["fit", "--config", config_path, "--out", pred_csv]) == 0
    a_star, sigma_star = read_predictions_csv(pred_csv)
    assert a_star.shape == (300,)
    assert np.all(sigma_star >= 0)

    assert main(["eval", "--predictions", pred_csv, "--dataset", data_csv]) == 0
    out = capsys.readouterr().out
    assert "mwd" in out and "mae" in out

    # the fit beat the trivial all-zeros predictor on this data
    mwd_line = [l for l in out.splitlines() if l.startswith("mwd")][-1]
    assert float(mwd_line.split("=")[1]) < np.mean(y[masks.test] ** 2)


def test_bench_writes_parseable_csv_report(tmp_path, config_path):
    out = tmp_path / "report.csv"
    code = main(
        ["bench", "--config", config_path, "--reps", "2", "--format", "csv",
         "--out", str(out)]
    )
    assert code == 0
    report = parse_report_csv(out.read_text())
    assert len(report.results) == 2
    assert report.config_echo["master_seed"] == "7"


def test_bench_table_to_stdout(config_path, capsys):
    assert main(["bench", "--config", config_path, "--reps", "1"]) == 0
    out = capsys.readouterr().out
    assert "mwd" in out
    assert "mean" in out


def test_bench_seed_override_changes_results(config_path, tmp_path, capsys):
    main(["bench", "--config", config_path, "--reps", "1", "--format", "jsonl"])
    first = capsys.readouterr().out
    main(["bench", "--config", config_path, "--reps", "1", "--format", "jsonl",
          "--seed", "99"])
    second = capsys.readouterr().out
    get_mwd = lambda text: [
        json.loads(l)["mwd"] for l in text.splitlines()
        if json.loads(l)["record"] == "repetition"
    ]
    assert get_mwd(first) != get_mwd(second)


def test_bench_method_override_runs_dense(config_path, capsys):
    assert main(
        ["bench", "--config", config_path, "--reps", "1", "--method", "ssr_rbf_dense"]
    ) == 0
    assert "mean" in capsys.readouterr().out


def test_tune_outputs_best_cell(tmp_path, config_path, capsys):
    cfg = tmp_path / "tune.ini"
    cfg.write_text(CONFIG_1A + "\ngrid_beta = 0.001\ngrid_gamma = 0.001\n")
    assert main(["tune", "--config", str(cfg)]) == 0
    out = capsys.readouterr().out
    assert "best: beta=0.001 gamma=0.001" in out


def test_error_is_machine_readable(tmp_path, capsys):
    code = main(["fit", "--config", str(tmp_path / "missing.ini"), "--out", "x.csv"])
    assert code == 1
    err_line = capsys.readouterr().err.strip()
    payload = json.loads(err_line)
    assert payload["error"] == "FileNotFoundError"


def test_bench_surfaces_cause_when_all_repetitions_fail(config_path, capsys):
    code = main(
        ["bench", "--config", config_path, "--n", "100000", "--reps", "1",
         "--method", "ssr_rbf_dense"]
    )
    assert code == 1
    payload = json.loads(capsys.readouterr().err.strip())
    assert "DenseMemoryGuard" in payload["message"]


def test_console_entry_point_subprocess(tmp_path, config_path):
    # exercise the installed script path end to end, numpy backend for speed
    out = tmp_path / "r.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "weakreg.cli", "bench", "--config", config_path,
         "--reps", "1", "--format", "csv", "--out", str(out)],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "WEAKREG_BACKEND": "numpy"},
    )
    assert proc.returncode == 0, proc.stderr
    assert len(parse_report_csv(out.read_text()).results) == 1
