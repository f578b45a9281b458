import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from levelwalk.cli import run
from levelwalk.schema import SCHEMAS

GOLDEN = Path(__file__).parent / "golden"
P1 = ["--p", "0.3", "--q", "0.2", "--r", "0.3", "--s", "0.2"]


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def cli(*argv):
    return subprocess.run([sys.executable, "-m", "levelwalk", *argv], capture_output=True, text=True)


def test_two_level_json():
    code, text = invoke("two-level", *P1, "--n-min", "-5", "--n-max", "5")
    assert code == 0
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMAS["two-level"])
    assert len(doc["rows"]) == 11
    assert doc["summary"]["pi0"] == pytest.approx(0.625, abs=1e-15)
    assert doc["summary"]["v_gf"]["v0"] == pytest.approx(1.328125, abs=1e-12)
    assert [r["n"] for r in doc["rows"]] == list(range(-5, 6))


def test_two_level_default_range():
    code, text = invoke("two-level", *P1)
    assert code == 0 and len(json.loads(text)["rows"]) == 41


def test_two_level_csv():
    code, text = invoke("two-level", *P1, "--n-min", "-1", "--n-max", "1", "--format", "csv")
    assert code == 0
    lines = text.split("\n")
    assert lines[0] == "n,f,g,sf,sg"
    assert "\r" not in text
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 3
    assert float(rows[1]["f"]) == pytest.approx(1.4152273992686997, abs=1e-14)


def test_golden_two_level():
    _, text = invoke("two-level", *P1, "--n-min", "-3", "--n-max", "3")
    assert text == (GOLDEN / "two_level_p1.json").read_text()


def test_golden_multi_csv():
    _, text = invoke("multi", *P1, "--n-min", "-2", "--n-max", "2", "--m-max", "2", "--format", "csv")
    assert text == (GOLDEN / "multi_p1.csv").read_text()


def test_golden_simulate():
    _, text = invoke("simulate", "--model", "multi-level", *P1, "--trials", "2000", "--seed", "42")
    assert text == (GOLDEN / "simulate_multi_p1.json").read_text()


def test_multi_json():
    code, text = invoke("multi", *P1, "--m-max", "3")
    assert code == 0
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMAS["multi"])
    assert doc["summary"]["pi_m"][:3] == pytest.approx([0.4, 0.24, 0.144], abs=1e-15)
    assert len(doc["summary"]["v_gf"]) == 4
    row = next(r for r in doc["rows"] if r["n"] == 0 and r["m"] == 0)
    assert row["f"] == pytest.approx(1.1470787, abs=1e-7)


def test_multi_csv_header():
    code, text = invoke("multi", *P1, "--m-max", "0", "--format", "csv")
    assert code == 0 and text.startswith("n,m,f,sf\n")


def test_simulate_json_and_csv():
    code, text = invoke("simulate", *P1, "--trials", "1000", "--seed", "5")
    assert code == 0
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMAS["simulate"])
    assert doc["summary"]["seed"] == 5
    assert sum(r["count"] for r in doc["rows"]) == 1000
    code, text = invoke("simulate", "--model", "multi", *P1, "--trials", "1000", "--format", "csv")
    assert code == 0 and text.startswith("n,m,count\n")


def test_simulate_reproducible_bytes():
    args = ("simulate", "--model", "two-level", *P1, "--trials", "30000", "--seed", "99")
    assert invoke(*args) == invoke(*args)
    assert invoke(*args) == invoke(*args, "--workers", "4")


@pytest.mark.parametrize("argv", [
    ["two-level", "--p", "0.5", "--q", "0.5", "--r", "0", "--s", "0"],
    ["two-level", *P1, "--n-min", "3", "--n-max", "1"],
    ["two-level", "--p", "0.3", "--q", "0.2", "--r", "0.3", "--s", "0.3"],
    ["multi", *P1, "--m-max", "100"],
    ["simulate", *P1, "--trials", "0"],
    ["simulate", *P1, "--seed", "-4"],
])
def test_validation_errors_exit_2(argv, capsys):
    code, text = invoke(*argv)
    assert code == 2
    assert text == ""
    err = capsys.readouterr().err.strip()
    assert err.startswith("levelwalk:") and "\n" not in err


def test_usage_errors_exit_2():
    res = cli("two-level", "--p", "0.3")
    assert res.returncode == 2 and res.stdout == ""
    res = cli("verify", *P1, "--tol-abs", "abc")
    assert res.returncode == 2
    res = cli("simulate", "--model", "ladder", *P1)
    assert res.returncode == 2
    res = cli("frobnicate")
    assert res.returncode == 2


def test_range_error_names_the_cap():
    res = cli("multi", *P1, "--m-max", "100")
    assert res.returncode == 2
    assert "RangeError" in res.stderr


def test_verify_small(capsys):
    code, text = invoke("verify", *P1, "--trials", "50000")
    assert code == 0
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMAS["verify"])
    assert doc["summary"]["overall_pass"] is True
    assert doc["informational"]
    names = [r["name"] for r in doc["informational"]]
    assert any("v0 paper" in n for n in names)
    assert any("v_m paper" in n for n in names)
    assert all(r["status"] != "informational" for r in doc["checks"])


def test_verify_failure_exits_1():
    # zero tolerances cannot absorb rounding in the series-vs-closed-form checks
    code, text = invoke("verify", *P1, "--trials", "2000", "--tol-abs", "0", "--tol-rel", "0")
    assert code == 1
    assert json.loads(text)["summary"]["overall_pass"] is False


def test_json_round_trip():
    _, text = invoke("two-level", *P1, "--n-min", "-2", "--n-max", "2")
    doc = json.loads(text)
    assert json.loads(json.dumps(doc, indent=2)) == doc
    assert json.dumps(doc, indent=2) + "\n" == text
