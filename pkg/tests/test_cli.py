import json
import subprocess
import sys
from pathlib import Path

import pytest

from symplectic_filtered.cli import main

GOLDEN = Path(__file__).parent / "golden"
DATA = Path(__file__).parent / "data"

CASES = {
    "dims_kt": ["dims", "kt"],
    "dims_t4_p1": ["dims", "t4", "--p", "1"],
    "ring_kt_p0": ["ring", "kt", "--p", "0"],
    "lefschetz_kt": ["lefschetz", "kt"],
    "symbol_6_p1": ["symbol", "--dim", "6", "--p", "1"],
    "torus_genus2": ["torus", "genus2"],
    "torus_kt": ["torus", "kt"],
    "verify_kt_les_r1": ["verify", "kt", "--suite", "les", "--r", "1"],
}


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.mark.parametrize("name", sorted(CASES))
def test_machine_output_matches_golden(name, capsys):
    code, out, _ = run(CASES[name] + ["--format", "machine"], capsys)
    assert code == 0
    assert out == (GOLDEN / f"{name}.json").read_text()


def test_output_is_deterministic(capsys):
    argv = ["verify", "kt", "--suite", "leibniz", "--samples", "30", "--seed", "4", "--format", "machine"]
    first = run(argv, capsys)[1]
    doc = json.loads(first)
    assert doc["passed"] and doc["result"]["seed"] == 4
    assert run(argv, capsys)[1] == first


def test_table_output(capsys):
    code, out, _ = run(["dims", "kt"], capsys)
    assert code == 0
    assert "(1, 3, 4, 3, 1)" in out
    code, out, _ = run(["ring", "kt", "--p", "0"], capsys)
    assert "2*[e1]" in out


def test_out_file(tmp_path, capsys):
    target = tmp_path / "dims.json"
    assert main(["dims", "kt", "--format", "machine", "--out", str(target)]) == 0
    assert json.loads(target.read_text())["schema"] == "symplectic-filtered/1"
    assert capsys.readouterr().out == ""


@pytest.mark.parametrize("argv", [
    ["dims", str(DATA / "bad.model")],
    ["dims", str(DATA / "malformed.model")],
    ["dims", "no-such-model"],
    ["symbol", "--dim", "5"],
    ["dims", "kt", "--p", "7"],
    ["torus", "no-such-monodromy"],
])
def test_bad_input_exits_with_two(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2
    assert err.startswith("error:")


def test_failed_verification_exits_with_one(monkeypatch, capsys):
    from symplectic_filtered import properties
    from symplectic_filtered.properties import SuiteResult

    def failing(model, samples, rng):
        result = SuiteResult("sl2", samples=1)
        result.fail("forced")
        return result

    monkeypatch.setitem(properties.SUITES, "sl2", failing)
    code, out, _ = run(["verify", "kt", "--suite", "sl2"], capsys)
    assert code == 1 and "FAILED" in out


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "symplectic_filtered.cli", "dims", "kt"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and "betti" in proc.stdout.lower()
