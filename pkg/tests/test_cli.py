from __future__ import annotations

import json
from fractions import Fraction

import pytest

from thuefund.cli import main, parse_element, parse_theta
from thuefund.exact import Field


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_poly(capsys):
    code, out, _ = run(capsys, "poly", "1", "3", "2")
    data = json.loads(out)
    assert code == 0 and data["coefficients"] == ["1", "7", "14/5"] and data["D"] == 5
    code, out, _ = run(capsys, "poly", "1", "3", "1", "--d", "3")
    data = json.loads(out)
    assert code == 0 and data["shifted"] == ["3", "-6"] and data["N"] == 3
    code, _, err = run(capsys, "poly", "2", "4", "1")
    assert code == 1 and "gcd" in err


def test_measure_cor1(capsys):
    code, out, _ = run(capsys, "measure", "cor1", "--a", "128", "--b", "125", "--n", "3", "--cert", "table1")
    data = json.loads(out)
    assert code == 0 and data["applicable"] and data["kappa"] + 1 <= 2.46
    code, out, err = run(capsys, "measure", "cor1", "--a", "5", "--b", "1", "--n", "3")
    assert code == 2 and "E = 0.258 < 1" in err
    assert json.loads(out)["applicable"] is False
    code, _, _ = run(capsys, "measure", "cor1", "--a", "4", "--b", "2", "--n", "3")
    assert code == 1
    code, out, _ = run(capsys, "measure", "cor1", "--a", "10:1", "--b", "10:-1", "--t", "-1", "--n", "3",
                       "--output", "text")
    assert code == 0 and out.startswith("Cor1:")


def test_measure_cor2_and_thm1(capsys):
    code, out, _ = run(capsys, "measure", "cor2", "--n", "3", "--t", "-7", "--x", "0", "--beta1=-2:1",
                       "--gamma1", "1:1")
    assert code == 0 and json.loads(out)["details"]["u1"] == -2
    code, out, _ = run(capsys, "measure", "cor2", "--n", "3", "--t", "2", "--x", "0", "--beta1=-1:1",
                       "--gamma1", "1")
    assert code == 2
    code, out, _ = run(capsys, "measure", "thm1", "--beta1", "0", "--beta2=-3", "--gamma1", "1",
                       "--gamma2=-15625/16384", "--n", "3", "--x", "125", "--g", "15625")
    assert code == 0 and json.loads(out)["pipeline"] == "Thm1"


def test_transform(capsys):
    code, out, _ = run(capsys, "measure", "transform", "--C", "1e-27", "--kappa", "1.5", "--theta", "2^(1/3)",
                       "--a1", "5", "--a4", "4")
    data = json.loads(out)
    assert code == 0
    assert abs(data["C"] - 1e-27 / (4 * 5 ** 1.5)) < 1e-40
    assert data["C"] <= 1e-27 / (4 * 5 ** 1.5)
    code, _, _ = run(capsys, "measure", "transform", "--C", "1", "--kappa", "1", "--theta", "2",
                     "--a1", "2", "--a2", "4", "--a3", "1", "--a4", "2")
    assert code == 1


def test_usage_errors():
    for argv in (["measure", "cor1", "--a", "128", "--n", "3"], ["poly", "1", "3"], ["bogus"],
                 ["poly", "1", "3", "2", "--precision", "10"]):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 64


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "divisibility", "--rmax", "6")
    lines = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(lines) == 7 and all(rec["passed"] for rec in lines)
    code, out, _ = run(capsys, "verify", "table", "--n", "3", "--rmax", "30", "--output", "text")
    assert code == 0 and out.startswith("PASS")


def test_json_is_byte_identical(capsys):
    argv = ["measure", "cor1", "--a", "128", "--b", "125", "--n", "3"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_element_and_theta_syntax():
    K = Field(-1)
    assert parse_element("3:-2", K) == K.element(3, -2)
    assert parse_element("1/2") == Field(None).element(Fraction(1, 2), 0)
    assert abs(complex(parse_theta("2^(1/3)")) - 2 ** (1 / 3)) < 1e-15
    assert abs(complex(parse_theta("1+2j")) - (1 + 2j)) < 1e-15
