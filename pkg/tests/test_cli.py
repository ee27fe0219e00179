import csv
import io
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from pathrisk.cli import main

GOLDEN = Path(__file__).parent / "golden"
EPISODE_IN = str(GOLDEN / "episode_returns.csv")
DAILY_IN = str(GOLDEN / "daily_returns.csv")

GOLDEN_CASES = {
    "paths.csv": ["paths", "-i", EPISODE_IN],
    "paths_percent.csv": ["paths", "--percent", "-i", EPISODE_IN],
    "episode.csv": ["episode", "-i", EPISODE_IN],
    "lst.csv": ["lst", "--threshold", "2", "-i", EPISODE_IN],
    "risk.csv": ["risk", "--window", "60", "--stride", "5", "-i", DAILY_IN],
    "risk.json": ["risk", "--window", "60", "--stride", "5", "--format", "json", "-i", DAILY_IN],
}


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def run_process(*argv, stdin=""):
    return subprocess.run([sys.executable, "-m", "pathrisk.cli", *argv], input=stdin,
                          capture_output=True, text=True)


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_outputs(name, capsys):
    code, out = run(GOLDEN_CASES[name], capsys)
    assert code == 0
    assert out == (GOLDEN / name).read_text(encoding="utf-8")


def test_paths_content(capsys):
    _, out = run(["paths", "-i", EPISODE_IN], capsys)
    table = rows(out)
    assert len(table) == 5 and table[0]["date"] == ""
    assert [float(r["path"]) for r in table] == pytest.approx([0, 0.05, -0.03, 0.02, 0.06], abs=1e-12)
    assert [float(r["drawdown"]) for r in table] == pytest.approx([0, 0, 0.08, 0.03, 0], abs=1e-12)
    assert [int(r["duration"]) for r in table] == [0, 0, 1, 2, 0]


def test_paths_percent(capsys):
    _, out = run(["paths", "--percent", "-i", EPISODE_IN], capsys)
    dd = float(rows(out)[2]["drawdown"])
    assert dd == pytest.approx(1 - math.exp(-0.08), abs=1e-10)
    assert round(dd, 4) == 0.0769


def test_paths_empty_input(tmp_path, capsys):
    f = tmp_path / "empty.csv"
    f.write_text("date,return\n")
    _, out = run(["paths", "-i", str(f)], capsys)
    assert out == "date,path,running_max,drawdown,peak_time,duration\n,0,0,0,0,0\n"


def test_episode_content(capsys):
    _, out = run(["episode", "-i", EPISODE_IN], capsys)
    (row,) = rows(out)
    assert (row["peak"], row["bottom"], row["recovery"], row["duration"]) == ("1", "2", "4", "3")


def test_episode_censored_and_undefined(tmp_path, capsys):
    f = tmp_path / "r.csv"
    f.write_text("date,return\n1,0.0512710964\n2,-0.0768836536\n3,0.0512710964\n")
    _, out = run(["episode", "-i", str(f)], capsys)
    assert rows(out)[0]["recovery"] == "CENSORED"
    f.write_text("date,return\n1,0.01\n2,0.02\n")
    proc = run_process("episode", "-i", str(f))
    assert proc.returncode == 1
    assert "no maximum-drawdown episode" in proc.stderr


def test_lst_none_and_bad_threshold(capsys):
    _, out = run(["lst", "--threshold", "50", "-i", EPISODE_IN], capsys)
    assert rows(out)[0]["stopping_time"] == "NONE"
    proc = run_process("lst", "--threshold", "0", "-i", EPISODE_IN)
    assert proc.returncode == 2 and "positive integer" in proc.stderr


def test_risk_increasing_series(tmp_path, capsys):
    f = tmp_path / "up.csv"
    f.write_text("date,return\n" + "".join(f"{i},0.001\n" for i in range(30)))
    _, out = run(["risk", "--window", "10", "-i", str(f)], capsys)
    row = rows(out)[0]
    assert float(row["ced"]) == 0 and float(row["conditional_expected_duration"]) == 0


def test_risk_insufficient_data():
    proc = run_process("risk", "--window", "180", "-i", EPISODE_IN)
    assert proc.returncode == 1
    assert "at least 181 returns" in proc.stderr


def test_risk_full_window(capsys):
    _, out = run(["risk", "--window", "full", "-i", DAILY_IN], capsys)
    row = rows(out)[0]
    assert row["window"] == "full" and row["n_windows"] == "1"


def test_axioms_output(capsys):
    _, out = run(["axioms"], capsys)
    table = rows(out)
    results = {(r["transform"], r["axiom"]): r["result"] for r in table}
    assert [results["max_duration", a] for a in
            ("normalization", "shift_invariance", "scaling_invariance")] == ["PASS"] * 3
    assert results["max_drawdown", "scaling_invariance"] == "FAIL"
    assert results["max_drawdown", "shift_invariance"] == "PASS"


def test_simulate_fit_round_trip(tmp_path, capsys):
    sim = tmp_path / "sim.csv"
    assert main(["simulate", "--kappa", "0.8", "--n", "10000", "--seed", "11",
                 "-o", str(sim)]) == 0
    assert sim.read_text().startswith("date,log_return\n")
    _, out = run(["fit", "-i", str(sim)], capsys)
    row = rows(out)[0]
    assert float(row["kappa_hat"]) == pytest.approx(0.8, abs=0.02)
    assert row["n"] == "10000"


def test_simulate_deterministic(capsys):
    _, a = run(["simulate", "--kappa", "0.5", "--n", "300", "--seed", "4"], capsys)
    _, b = run(["simulate", "--kappa", "0.5", "--n", "300", "--seed", "4"], capsys)
    _, c = run(["simulate", "--kappa", "0.5", "--n", "300", "--seed", "5"], capsys)
    assert a == b and a != c


def test_risk_deterministic_on_simulated(tmp_path, capsys):
    sim = tmp_path / "sim.csv"
    main(["simulate", "--kappa", "0.5", "--n", "1000", "--seed", "2", "-o", str(sim)])
    _, a = run(["risk", "--window", "100", "-i", str(sim)], capsys)
    _, b = run(["risk", "--window", "100", "-i", str(sim)], capsys)
    assert a == b


def test_fit_header_only_is_usage_error():
    proc = run_process("fit", stdin="date,return\n")
    assert proc.returncode == 2
    assert "usage error" in proc.stderr and proc.stdout == ""


def test_parse_error_reports_line(tmp_path):
    f = tmp_path / "bad.csv"
    f.write_text("date,return\n1,0.01\n2,oops\n")
    proc = run_process("paths", "-i", str(f))
    assert proc.returncode == 1
    assert f"{f}:3:" in proc.stderr


def test_invalid_arguments_exit_2():
    assert run_process("simulate", "--kappa", "1.2").returncode == 2
    assert run_process("risk", "--alpha", "1.0", "-i", DAILY_IN).returncode == 2
    assert run_process("risk", "--window", "1", "-i", DAILY_IN).returncode == 2
    assert run_process("kappa-table", "--kappa", "0.5", "--seed", "-3").returncode == 2
    assert run_process("nonsense").returncode == 2
    assert run_process("paths", "-i", "/nonexistent/file.csv").returncode == 1


def test_stdin_input():
    proc = run_process("episode", stdin=(GOLDEN / "episode_returns.csv").read_text())
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "episode.csv").read_text()


def test_kappa_table_and_corr(capsys):
    _, out = run(["kappa-table", "--kappa", "0.1,0.5,0.9", "--n", "2000", "--format", "json"],
                 capsys)
    obj = json.loads(out)
    assert obj["kappa"] == [0.1, 0.5, 0.9]
    assert obj["ced"] == sorted(obj["ced"])
    _, out = run(["kappa-corr", "--n", "3000", "--regime-length", "500"], capsys)
    row = rows(out)[0]
    assert int(row["n_windows"]) == 3000 - 126 + 1
    proc = run_process("kappa-corr", "--n", "100")
    assert proc.returncode == 2
    assert "metric window" in proc.stderr
