from __future__ import annotations

import math

import pytest

import cases
from thuefund.bruteforce import brute_force_check, validate_result
from thuefund.errors import InvalidInput
from thuefund.exact import Field


def test_square_root_two():
    # |sqrt2 - p/q| > 1/(3 q^2) for all q; q = 1 already breaks 1/(2 q^2) and the exponent 1.5 fails for large q
    assert brute_force_check(math.sqrt(2), 3, 1, q_max=500).passed
    weak = brute_force_check(math.sqrt(2), 1, 0.5, q_max=500)
    assert not weak.passed and weak.failures
    assert not brute_force_check(math.sqrt(2), 2, 1, q_max=500).passed


def test_gaussian_lattice():
    # q = 3 lands exactly on the Gaussian integer 1 + i
    report = brute_force_check(complex(1, 1) / 3, 100, 1, field=Field(-1), q_max=30)
    assert report.checked > 30
    assert not report.passed and 3 in report.failures
    assert brute_force_check(2 ** 0.5 * 1j, 5, 1, field=Field(-1), q_max=30).passed


def test_invalid_input():
    with pytest.raises(InvalidInput):
        brute_force_check(math.sqrt(2), 0, 1)
    with pytest.raises(InvalidInput):
        brute_force_check(math.sqrt(2), 1, -1)
    with pytest.raises(InvalidInput):
        brute_force_check(math.sqrt(2), 1, 1, q_max=0)


def test_cube_root_measure_holds_for_small_denominators():
    report = validate_result(cases.cube_root_two(), q_max=300)
    assert report.passed and report.checked > 0
