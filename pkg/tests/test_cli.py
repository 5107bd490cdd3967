"""Command-line interface: exit codes, output formats, determinism."""

import json
import subprocess
import sys


def run_cli(*args, timeout=120):
    return subprocess.run([sys.executable, "-m", "qgelfand", *args],
                          capture_output=True, text=True, timeout=timeout)


SMALL = ("--n", "2", "--N-max", "1", "--m-max", "2", "--order", "2")


# ---------------------------------------------------------------------------
# eigenvalue / limit verbs
# ---------------------------------------------------------------------------

def test_eigenvalue_output():
    res = run_cli("eigenvalue", "--n", "2", "--lambda", "1,0", "--m-max", "1")
    assert res.returncode == 0, res.stderr
    lines = res.stdout.splitlines()
    assert lines[0] == "E_0(1,0) = q + q^-1"
    assert lines[1] == "E_1(1,0) = q^3 + q^-1"


def test_eigenvalue_single_degree_and_rational_point():
    res = run_cli("eigenvalue", "--n", "2", "--lambda", "1,0",
                  "--m", "1", "--eval-q", "2")
    assert res.returncode == 0
    assert res.stdout.splitlines() == ["E_1(1,0) = q^3 + q^-1   [q=2: 17/2]"]
    res = run_cli("eigenvalue", "--n", "2", "--lambda", "1,0",
                  "--m", "1", "--eval-q", "3/2")
    assert res.stdout.splitlines() == ["E_1(1,0) = q^3 + q^-1   [q=3/2: 97/24]"]


def test_eigenvalue_rejects_bad_weight():
    res = run_cli("eigenvalue", "--n", "2", "--lambda", "0,1", "--m", "1")
    assert res.returncode == 2
    assert "not dominant" in res.stderr
    res = run_cli("eigenvalue", "--n", "3", "--lambda", "1,0", "--m", "1")
    assert res.returncode == 2
    res = run_cli("eigenvalue", "--n", "2", "--lambda", "1,x", "--m", "1")
    assert res.returncode == 2


def test_eval_q_zero_rejected():
    res = run_cli("eigenvalue", "--n", "2", "--lambda", "1,0",
                  "--m", "1", "--eval-q", "0")
    assert res.returncode == 2


def test_limit_output():
    res = run_cli("limit", "--n", "3", "--lambda", "0,0,0", "--m-max", "2")
    assert res.returncode == 0
    assert res.stdout.splitlines() == ["m=0: 3", "m=1: 0", "m=2: 0"]
    res = run_cli("limit", "--n", "2", "--lambda", "1,0", "--m-max", "2")
    assert res.stdout.splitlines() == ["m=0: 2", "m=1: 1", "m=2: 2"]


# ---------------------------------------------------------------------------
# verify verb
# ---------------------------------------------------------------------------

def test_verify_small_passes():
    res = run_cli("verify", *SMALL)
    assert res.returncode == 0, res.stdout + res.stderr
    assert "FAIL" not in res.stdout
    summary = res.stdout.strip().splitlines()[-1]
    assert "0 failed" in summary


def test_verify_json_round_trip(tmp_path):
    out = tmp_path / "report.json"
    res = run_cli("verify", *SMALL, "--format", "json", "--out", str(out))
    assert res.returncode == 0
    report = json.loads(out.read_text())
    assert set(report) == {"version", "config", "checks", "summary",
                           "runtime_ms"}
    rows = report["checks"]
    assert rows and all(set(r) >= {"name", "context", "verdict"} for r in rows)
    tally = sum(1 for r in rows if r["verdict"] == "pass")
    assert report["summary"]["pass"] == tally
    assert report["summary"]["fail"] == len(rows) - tally == 0
    # rows arrive sorted by (name, context)
    keys = [(r["name"], r["context"]) for r in rows]
    assert keys == sorted(keys)
    assert report["config"]["ns"] == [2]


def test_verify_check_selection():
    res = run_cli("verify", *SMALL, "--checks", "ybe,crossing",
                  "--format", "json")
    assert res.returncode == 0
    report = json.loads(res.stdout)
    assert {r["name"] for r in report["checks"]} == {"ybe", "crossing"}
    res = run_cli("verify", *SMALL, "--checks", "no-such-check")
    assert res.returncode == 2


def test_verify_deterministic_across_jobs():
    reports = []
    for jobs in ("1", "3"):
        res = run_cli("verify", *SMALL, "--jobs", jobs, "--format", "json")
        assert res.returncode == 0
        report = json.loads(res.stdout)
        report.pop("runtime_ms")
        report["config"].pop("jobs")
        reports.append(report)
    assert reports[0] == reports[1]


def test_verify_fault_injection_fails():
    res = run_cli("verify", *SMALL, "--inject-fault", "rmatrix")
    assert res.returncode == 1
    assert "FAIL" in res.stdout


def test_version_and_usage():
    res = run_cli("--version")
    assert res.returncode == 0 and res.stdout.strip()
    res = run_cli()
    assert res.returncode == 2
    res = run_cli("verify", "--n", "0")
    assert res.returncode == 2
