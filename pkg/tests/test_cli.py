import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from gaussq.cli import main

ROW_KEYS = {"family", "param", "q", "value", "status", "gap", "terms"}


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_sum_cesaro(capsys):
    code, out, _ = run(capsys, "sum", "--family", "s1", "--rho", "3", "--q", "2")
    assert code == 0
    assert "value=0.427525130255" in out and "status=cesaro" in out


def test_sum_divergent_exit_code(capsys):
    code, out, _ = run(capsys, "--format", "json", "sum", "--family", "s2", "--kappa", "1", "--q", "2")
    assert code == 2
    row = json.loads(out)
    assert ROW_KEYS <= set(row)
    assert row["status"] == "divergent" and row["direction"] == "-inf" and row["value"] is None


@pytest.mark.parametrize(
    "args",
    [
        ("sum", "--family", "s1", "--rho", "2", "--q", "0.5"),
        ("sum", "--family", "s1", "--kappa", "2", "--q", "0.5"),
        ("sum", "--family", "s2", "--kappa", "2", "--q", "1"),
        ("sum", "--family", "s2", "--kappa", "2", "--q", "abc"),
        ("--precision", "20", "sum", "--family", "s1", "--rho", "3", "--q", "0.5"),
        ("--digits", "45", "sum", "--family", "s1", "--rho", "3", "--q", "0.5"),
        ("table", "--family", "s1", "--rho", "x..y", "--q", "0.5"),
        ("coeffs", "--source", "entry7-1", "--n", "4"),
        ("bogus",),
        (),
    ],
)
def test_usage_errors(capsys, args):
    code, _, err = run(capsys, *args)
    assert code == 64
    assert "error" in err


def test_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "sum", "--family", "s1", "--rho", "3", "--q", "0.5", "--digits", "20", "--format", "json")
    assert code == 0
    assert json.loads(out)["value"] == "0.61032151804826642592"


def test_digits_capped_by_precision(capsys):
    args = ("--format", "json", "sum", "--family", "s1", "--rho", "3", "--q", "0.5")
    code, out, _ = run(capsys, "--precision", "30", "--digits", "20", *args)
    assert code == 0 and json.loads(out)["value"] == "0.61032151804826642592"
    assert run(capsys, "--precision", "30", "--digits", "21", *args)[0] == 64


def test_table_s1_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "table", "--family", "s1", "--rho", "3..8", "--q", "2,0.5")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 12
    assert all(set(r) == ROW_KEYS for r in rows)
    assert [(r["param"], r["q"]) for r in rows[:2]] == [(3, "0.5"), (3, "2")]
    assert rows[0]["value"] == "0.610321518048"
    assert rows[1]["status"] == "cesaro" and rows[1]["gap"] == "1.296841253174"


def test_table_s2_csv(capsys):
    code, out, _ = run(capsys, "--format", "csv", "table", "--family", "s2", "--kappa", "1..6", "--q", "0.5,2")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["family", "param", "q", "value", "status", "gap", "terms"]
    assert rows[1]["status"] == "divergent" and rows[1]["value"] == ""
    # rounded half-even; the true value is -2.16394503888673...
    assert rows[3]["value"] == "-2.163945038887"


def test_table_single_row_text(capsys):
    code, out, _ = run(capsys, "--no-meta", "table", "--family", "s1", "--rho", "3..3", "--q", "0.5")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2 and "0.610321518048" in lines[1]
    code, out, _ = run(capsys, "table", "--family", "s1", "--rho", "3", "--q", "0.5")
    assert out.startswith("# gaussq")


def test_table_failed_cell_does_not_abort(capsys):
    code, out, _ = run(capsys, "--format", "json", "--max-terms", "400", "table", "--family", "s1", "--rho", "3..4", "--q", "0.5,0.95")
    rows = json.loads(out)
    assert len(rows) == 4
    assert {r["status"] for r in rows} >= {"converged", "error"}
    assert code == 1


def test_table_parallel_matches_serial(capsys):
    args = ("--format", "csv", "table", "--family", "s2", "--kappa", "1..6", "--q", "0.5,2,1/3")
    _, serial, _ = run(capsys, *args)
    _, parallel, _ = run(capsys, "--jobs", "4", *args)
    assert serial == parallel


def test_deterministic_output(capsys):
    args = ("--no-meta", "table", "--family", "s1", "--rho", "3..5", "--q", "0.5,2")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_output_file_and_config(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nprecision = 60\nformat = json\ndigits = 15\n")
    out = tmp_path / "out.json"
    code, stdout, _ = run(capsys, "--config", str(cfg), "--digits", "14", "--output", str(out), "sum", "--family", "s1", "--rho", "3", "--q", "0.5")
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text())["value"] == "0.61032151804827"


def test_bad_config_key(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("colour = red\n")
    code, _, err = run(capsys, "--config", str(cfg), "verify", "--suite", "muir")
    assert code == 64 and "unknown key" in err


def test_coeffs(capsys):
    assert run(capsys, "coeffs", "--source", "entry7-1", "--q", "2", "--n", "7")[1] == "1 2 2 8 12 32 56 128\n"
    assert run(capsys, "coeffs", "--source", "entry7-2", "--q", "2", "--n", "5")[1] == "1 1 2 6 12 28\n"
    _, muir, _ = run(capsys, "coeffs", "--source", "muir", "--series", "qpoch:q=1/2,kappa=2", "--n", "6")
    _, closed, _ = run(capsys, "coeffs", "--source", "gauss4", "--kappa", "2", "--q", "1/2", "--n", "6")
    e = [Fraction(v) for v in muir.split()]
    d = [Fraction(v) for v in closed.split()]
    assert e[:3] == [1, Fraction(1, 2), Fraction(3, 8)]
    # Plus form at x = q: d_n = -q e_n
    assert d == [e[0]] + [-Fraction(1, 2) * v for v in e[1:]]
    _, rr, _ = run(capsys, "--format", "json", "coeffs", "--source", "ramanujan", "--q", "1/3", "--n", "3")
    assert json.loads(rr)["coefficients"] == ["1", "1/3", "1/9", "1/27"]


def test_coeffs_muir_truncation(capsys):
    code, out, _ = run(capsys, "coeffs", "--source", "muir", "--series", "list:1,1/2,1/4,1/8,1/16,1/32", "--n", "5")
    assert code == 0
    assert out.splitlines() == ["1 1/2 0", "# truncated: degenerate Hankel minor at index 2"]


def test_verify(capsys):
    code, out, _ = run(capsys, "--no-meta", "verify", "--suite", "muir")
    assert code == 0
    assert out.splitlines()[-1] == "4/4 checks passed"
    code, out, _ = run(capsys, "--format", "json", "verify", "--suite", "duality")
    assert code == 0 and all(c["passed"] for c in json.loads(out))


def test_verify_failing_tolerance(capsys):
    code, out, _ = run(capsys, "--tol", "1e-55", "verify", "--suite", "ramanujan")
    assert code == 1 and "FAIL" in out


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gaussq", "sum", "--family", "s2", "--kappa", "1", "--q", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
    assert "direction=-inf" in proc.stdout
