import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from virasoro.cli import run

FIXTURES = Path(__file__).parent / "fixtures"
SCHEMA = json.loads(resources.files("virasoro").joinpath("report.schema.json").read_text())


def run_json(*argv):
    code, out, err = run([*argv, "--format", "json"])
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return code, report


def test_verify_default_passes():
    code, report = run_json("verify", "--window", "8")
    assert code == 0
    assert report["summary"]["status"] == "pass" and report["summary"]["failed"] == 0
    assert report["schema_version"] == "1.0"


def test_verify_window_exhausted():
    code, report = run_json("verify", "--window", "2", "--suite", "coboundary")
    assert code == 3 and report["summary"]["status"] == "window-exhausted"


def test_verify_corrupted_suite_fails_with_counterexample():
    code, report = run_json("verify", "--suite", "corrupted-cocycle")
    assert code == 1
    failed = [c for s in report["suites"] for c in s["checks"] if c["status"] == "fail"]
    assert failed and all(c["counterexample"] is not None for c in failed)


def test_usage_errors():
    assert run(["verify", "--suite", "nope"])[0] == 2
    assert run(["bracket", "9", "0", "--window", "8"])[0] == 2
    assert run(["verify", "--window", "0"])[0] == 2
    assert run(["frobnicate"])[0] == 2


def test_cocycle_solve():
    code, report = run_json("cocycle", "solve", "--window", "10")
    assert code == 0
    res = report["result"]
    assert (res["solution_dimension"], res["coboundary_dimension"], res["quotient_dimension"]) \
        == (2, 1, 1)
    assert res["normalized_representative"]["2"] == {"0": "1/2"}
    assert run(["cocycle", "solve", "--window", "3"])[0] == 3


def test_derive_tt_text():
    code, out, _ = run(["ope", "derive-tt"])
    assert code == 0
    assert "c/2/(z-w)^4 + 2T(w)/(z-w)^2 + ∂T(w)/(z-w)" in out


def test_derive_monomial_top_is_unsatisfiable():
    code, report = run_json("ope", "derive-tt", "--monomial-top", "w", "--order", "5")
    assert code == 1
    assert report["result"]["constraints"]["satisfiable"] is False


def test_check_only_fixtures():
    assert run(["ope", "derive-tt", "--check-only", "--ope", str(FIXTURES / "tt_ope.json")])[0] == 0
    code, report = run_json("ope", "derive-tt", "--check-only",
                            "--ope", str(FIXTURES / "tt_ope_tampered.json"))
    assert code == 1
    assert report["summary"]["failed"] >= 1


def test_bracket():
    code, out, _ = run(["bracket", "3", "5"])
    assert code == 0 and "-2*L_8" in out
    code, report = run_json("bracket", "2", "-2")
    assert code == 0


def test_json_output_is_deterministic():
    a = run(["verify", "--format", "json", "--seed", "4"])
    b = run(["verify", "--format", "json", "--seed", "4"])
    assert a == b
    assert json.loads(a[1])["config"]["seed"] == 4


def test_timing_is_opt_in():
    _, report = run_json("verify", "--suite", "h2")
    assert report["suites"][0]["timing"] is None
    _, report = run_json("verify", "--suite", "h2", "--timing")
    assert isinstance(report["suites"][0]["timing"], float)


@pytest.mark.parametrize("argv", [["--version"], ["bracket", "1", "-1"]])
def test_module_entry_point(argv):
    proc = subprocess.run([sys.executable, "-m", "virasoro", *argv], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout
