import json
import subprocess
import sys

import pytest

from hecke_reduce.cli import main
from hecke_reduce.core import FormalSum, HeckePolynomial, PrimeIndex
from hecke_reduce.identities import hecke_product
from hecke_reduce.reducer import compose_slot, reduce

from conftest import T


def run(capsys, *argv):
    status = main(list(argv))
    return status, json.loads(capsys.readouterr().out)


def test_reduce_second_slot(capsys):
    status, doc = run(capsys, "reduce", "--n", "3", "--index", "0,1")
    assert status == 0
    assert doc["schema"] == "hecke-reduce/1"
    assert HeckePolynomial.from_json(doc) == T(3, 1) ** 2 - T(3, 2)


def test_reduce_first_slot(capsys):
    _, doc = run(capsys, "reduce", "--n", "2", "--index", "3")
    assert HeckePolynomial.from_json(doc) == T(2, 3)
    assert doc["terms"] == [{"coeff": "1", "monomial": [[3, 1]]}]


def test_reduce_normal_form(capsys):
    _, doc = run(capsys, "reduce", "--n", "3", "--index", "1,1", "--normal-form")
    assert HeckePolynomial.from_json(doc) == T(3, 1) ** 3 - T(3, 1) * T(3, 2) - 1


def test_expand(capsys):
    _, doc = run(capsys, "expand", "--n", "3", "--k0", "1", "--index", "0,1")
    assert FormalSum.from_json(doc) == FormalSum(3, {(1, 1): 1, (0, 0): 1})
    _, doc = run(capsys, "expand", "--n", "4", "--k0", "3", "--index", "1,1,0", "--via", "lemma")
    assert FormalSum.from_json(doc) == hecke_product(3, PrimeIndex(4, (1, 1, 0)))


def test_compose(capsys):
    _, doc = run(capsys, "compose", "--n", "4", "--slot", "3")
    assert HeckePolynomial.from_json(doc) == compose_slot(4, 3)


def test_factor(capsys):
    _, doc = run(capsys, "factor", "--n", "3", "--m", "12,5")
    assert doc["parity"] == 0
    factors = {f["p"]: HeckePolynomial.from_json(f["poly"]) for f in doc["factors"]}
    assert factors == {2: T(3, 2), 3: T(3, 1), 5: reduce(PrimeIndex(3, (0, 1)))}
    _, doc = run(capsys, "factor", "--n", "3", "--m", "1,-1")
    assert doc["parity"] == 1 and doc["factors"] == []


def test_euler(capsys):
    _, doc = run(capsys, "euler", "--n", "3", "--upto", "6", "--invert")
    factor = [HeckePolynomial.from_json(c) for c in doc["factor"]]
    inverse = [HeckePolynomial.from_json(c) for c in doc["inverse"]]
    assert factor[1] == -T(3, 1) and len(inverse) == 7
    assert inverse[2] == T(3, 2)
    _, doc = run(capsys, "euler", "--n", "3")
    assert "inverse" not in doc


def test_verify_passes(capsys):
    status, doc = run(capsys, "verify", "--n", "3", "--max-weight", "3", "--trials", "10", "--seed", "1")
    assert status == 0
    assert doc["pass"] is True
    assert doc["max_rel_err"] <= 1e-8
    assert {c["kind"] for c in doc["checks"]} >= {"reduce", "hecke_product", "step_identity"}


def test_verify_failure_exits_one(capsys):
    # a tolerance below double precision must flag some checks
    status, doc = run(capsys, "verify", "--n", "4", "--max-weight", "3", "--trials", "5", "--tol", "1e-30")
    assert status == 1 and doc["pass"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ["reduce", "--n", "3", "--index", "1"],
        ["reduce", "--n", "3", "--index", "1,-1"],
        ["reduce", "--n", "3", "--index", "a,b"],
        ["compose", "--n", "3", "--slot", "3"],
        ["factor", "--n", "3", "--m", "0,2"],
        ["frobnicate", "--n", "3"],
        ["verify", "--n", "3", "--tol", "0"],
        ["reduce", "--n", "1", "--index", ""],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_output_is_byte_stable():
    cmd = [sys.executable, "-m", "hecke_reduce", "verify", "--n", "3", "--max-weight", "2", "--trials", "3", "--seed", "5"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second


def test_output_file_and_env_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("HECKE_REDUCE_OUTPUT_DIR", str(tmp_path))
    status = main(["--pretty", "--output", "out/red.json", "reduce", "--n", "4", "--index", "0,0,1"])
    printed = capsys.readouterr().out
    assert status == 0
    written = (tmp_path / "out" / "red.json").read_text(encoding="utf-8")
    assert written == printed
    assert json.loads(written)["schema"] == "hecke-reduce/1"
    assert "\n  " in printed


def test_verify_figure(tmp_path, capsys):
    target = tmp_path / "errors.png"
    status, doc = run(capsys, "verify", "--n", "3", "--max-weight", "2", "--trials", "3", "--figure", str(target))
    assert status == 0
    assert doc["figure"] == str(target)
    assert target.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
