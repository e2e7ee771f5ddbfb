import json
import subprocess
import sys
from fractions import Fraction as Q

import numpy as np
import pytest

from vok.cli import main, plain, serialize


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, "--json", *argv)
    return code, json.loads(out)


def test_tau_example(capsys):
    code, out = run(capsys, "tau", "3", "9", "4,4,1")
    assert code == 0
    assert "outputs.image\t0,0,0,1,0,0,0,1,1" in out.splitlines()


def test_json_report_shape(capsys):
    code, rep = run_json(capsys, "twisted-lattice", "A2+A2", "--swap")
    assert code == 0
    assert set(rep) == {"command", "inputs", "outputs", "checks", "passed", "notes"}
    assert [c["weight"] for c in rep["outputs"]["classes"]] == ["1/8", "7/24", "7/24"]


def test_serialize_rules():
    assert plain(Q(7, 8)) == "7/8"
    assert plain((1, 2)) == [1, 2]
    assert plain(np.int64(3)) == 3 and type(plain(np.int64(3))) is int
    assert plain(np.array([[1, 2], [3, 4]])) == [[1, 2], [3, 4]]
    rep = {"b": [], "a": Q(1, 2)}
    assert serialize(rep, "tsv") == "a\t1/2\nb\t[]"
    assert serialize(rep, "json").index('"a"') < serialize(rep, "json").index('"b"')


def test_empty_candidates(capsys):
    code, rep = run_json(capsys, "classify", "--dim", "25", "--require", "B4A2")
    assert code == 0
    assert rep["outputs"]["candidates"] == []


def test_classify_filter(capsys):
    code, rep = run_json(capsys, "classify", "--dim", "60", "--require", "B4A2")
    assert rep["outputs"]["candidates"] == ["F4,6A2,2"]


def test_orbifold_dim(capsys):
    code, rep = run_json(capsys, "orbifold-dim", "--dimV", "96", "--fixed", "44")
    assert code == 0 and rep["outputs"]["dim"] == 60


def test_failing_check_exits_1(capsys):
    code, rep = run_json(capsys, "check-invariant", "Eprimeprime_literal")
    assert code == 1 and not rep["checks"]["commutes_S"]
    code, rep = run_json(capsys, "check-invariant", "Eprime")
    assert code == 0


def test_usage_errors(capsys):
    assert main(["tau", "3", "9", "1,2"]) == 2
    assert main(["tau", "3", "9", "a,b"]) == 2
    assert main(["classify", "--dim", "10"]) == 2
    assert main(["cosets", "E8"]) == 2
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["--tol", "-1", "roots", "A2"])
    assert e.value.code == 2


def test_env_overrides(capsys, monkeypatch):
    monkeypatch.setenv("VOK_FORMAT", "json")
    code, out = run(capsys, "roots", "E8")
    assert json.loads(out)["outputs"]["dimension"] == 248
    monkeypatch.setenv("VOK_TOL", "1e-300")
    code, rep = run_json(capsys, "check-invariant", "E")
    assert code == 1  # float residuals exceed 1e-300


@pytest.mark.parametrize("argv", [
    ["roots", "F4"],
    ["weights", "A2", "2"],
    ["levelrank-pairs", "3", "9"],
    ["smatrix", "A2", "1", "--full"],
    ["qdim", "A8", "3", "0,0,3,0,0,0,0,0"],
    ["cosets", "A3"],
    ["twisted-lattice", "A1", "--negate"],
    ["f4-check"],
    ["e7a5-check"],
])
def test_commands_deterministic(capsys, argv):
    code1, out1 = run(capsys, *argv)
    code2, out2 = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_cosets_note(capsys):
    code, rep = run_json(capsys, "cosets", "A8")
    assert code == 0
    assert rep["outputs"]["distribution"]["8"] == 9
    assert "255" in rep["notes"][0] and "256" in rep["notes"][0]


def test_qdim_simple_current(capsys):
    code, rep = run_json(capsys, "qdim", "A8", "3", "0,0,3,0,0,0,0,0")
    assert rep["outputs"]["simple_current"]


def test_verify_all_exit_matches_criteria(capsys):
    from vok.acceptance import run_all

    code, rep = run_json(capsys, "verify-all")
    assert code == (0 if all(c.passed for c in run_all()) else 1)
    assert len(rep["outputs"]["summary"]) == 11


def test_console_script_subprocess():
    out = subprocess.run([sys.executable, "-m", "vok.cli", "tau", "3", "9", "9,0,0"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "outputs.image\t3,0,0,0,0,0,0,0,0" in out.stdout
