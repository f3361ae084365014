"""CLI: report schema, determinism, round-trip, CSV, exit codes."""

import csv
import json
import subprocess
import sys

import pytest

from rsmoment.cli import (DEFAULT_TOLERANCES, main, run_jbessel_mellin,
                          run_kernels, run_lemma41)

REQUIRED_FIELDS = {"identity", "parameters", "lhs", "rhs", "abs_err",
                   "rel_err", "tolerance", "passed", "tails", "runtime_ms"}


def _run_cli(args):
    proc = subprocess.run([sys.executable, "-m", "rsmoment.cli"] + args,
                          capture_output=True, text=True)
    return proc


def test_single_lemma41_case_schema(capsys):
    status = main(["verify-lemma41", "--modulus", "1", "--n", "6",
                   "--s", "1.0", "--qmax", "20000"])
    out = capsys.readouterr().out.strip().splitlines()
    assert status == 0
    assert len(out) == 1
    rep = json.loads(out[0])
    assert REQUIRED_FIELDS <= set(rep)
    assert isinstance(rep["lhs"], list) and len(rep["lhs"]) == 2
    assert rep["passed"] is True


def test_seeded_determinism():
    a = run_jbessel_mellin(draws=5, seed=4)
    b = run_jbessel_mellin(draws=5, seed=4)
    for ra, rb in zip(a, b):
        assert ra["parameters"] == rb["parameters"]
        assert ra["lhs"] == rb["lhs"] and ra["rhs"] == rb["rhs"]
    c = run_jbessel_mellin(draws=5, seed=5)
    assert any(ra["parameters"] != rc["parameters"] for ra, rc in zip(a, c))


def test_report_roundtrip(tmp_path, capsys):
    reports = run_lemma41(modulus=1, n=4, s=1.0, q_max=5000)
    src = tmp_path / "reports.jsonl"
    src.write_text("".join(json.dumps(r) + "\n" for r in reports))
    status = main(["report", str(src)])
    out = capsys.readouterr().out.strip().splitlines()
    assert status == 0
    assert [json.loads(line) for line in out] == reports


def test_csv_summary(tmp_path, capsys):
    dst = tmp_path / "summary.csv"
    status = main(["verify-lemma41", "--modulus", "1", "--n", "4",
                   "--s", "1.2", "--qmax", "5000", "--csv", str(dst)])
    capsys.readouterr()
    assert status == 0
    rows = list(csv.DictReader(open(dst)))
    assert len(rows) == 1
    assert rows[0]["identity"] == "lemma41"
    assert rows[0]["passed"] == "True"


def test_exit_code_on_failure(capsys):
    # An absurdly tight tolerance forces a failing report and status 1.
    status = main(["verify-jbessel-mellin", "--draws", "2", "--seed", "1",
                   "--tolerance", "1e-30"])
    out = capsys.readouterr().out.strip().splitlines()
    assert status == 1
    assert any(not json.loads(line)["passed"] for line in out)


def test_usage_error_exit_code():
    proc = _run_cli(["no-such-subcommand"])
    assert proc.returncode == 2


def test_sweep_cartesian_grid(capsys):
    status = main(["sweep", "verify-jbessel-mellin",
                   "--param", "draws=1,2", "--param", "seed=1,2,3"])
    out = capsys.readouterr().out.strip().splitlines()
    assert status == 0
    assert len(out) == (1 + 2) * 3    # draws 1 and 2, three seeds


def test_default_tolerance_table():
    assert DEFAULT_TOLERANCES["kernels"] == 1e-7
    assert DEFAULT_TOLERANCES["lemma41"] == 1e-5
    assert DEFAULT_TOLERANCES["prop32"] == 1e-5
    assert DEFAULT_TOLERANCES["kuznetsov"] == 1e-3
    assert DEFAULT_TOLERANCES["first_moment"] == 1e-2


def test_kernels_runner_small():
    reports = run_kernels(draws=3, seed=7)
    assert all(r["passed"] for r in reports)
