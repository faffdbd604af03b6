from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from thuefund.bounds import (
    DenominatorCertificate,
    default_certificate,
    default_d_set,
    mu_bound_scan,
    poly_bound_check,
    remainder_bound_check,
    table_constants,
    verify_denominator_inequality,
)
from thuefund.errors import CaseMismatch, InvalidInput, NotApplicable
from thuefund.hypergeom import big_D, big_N, cal_N, gamma_ratios
from thuefund.numeric import mpf_of, working_precision
from thuefund.tables import parse_table, table_row

# constants as printed in the published table, row n = 3 .. 6
PUBLISHED = {3: ("2.0e7", "0.93", "0.97"), 4: ("4.9e6", "1.60", "1.64"),
             5: ("8.8e9", "1.37", "1.42"), 6: ("35000", "2.75", "2.78")}


def test_bundled_rows():
    for n, (C, d1, d2) in PUBLISHED.items():
        row = table_row(n)
        assert (Fraction(row.C1), Fraction(row.logD1), Fraction(row.logD2)) == (Fraction(C), Fraction(d1), Fraction(d2))
    C, D = table_constants(3, "table1-d2")
    assert C == 100 and D.log_value == Fraction("0.97")


def test_table_parser_rejects_garbage():
    with pytest.raises(InvalidInput):
        parse_table("3 2.0e7 0.93\n")
    assert parse_table("# comment\n7 10 1.5 1.6\n")[7].C1 == "10"


def test_default_d_set():
    assert default_d_set(3) == (1, 9)
    assert default_d_set(6) == (1, 4, 9)
    assert default_d_set(12) == (1, 8, 9)


def lhs_oracle(m, n, r, d):
    first, second = gamma_ratios(m, n, r)
    return max(Fraction(1), first, second) * Fraction(big_D(m, n, r), big_N(m, n, r, d))


def test_small_certificate_matches_float_oracle():
    cert = verify_denominator_inequality(3, 1, Fraction(20_000_000), "0.93", r_max=60)
    assert cert.verified and cert.status == "VerifiedUpTo(60)"
    for r in range(61):
        for d in default_d_set(3):
            rhs = 2.0e7 * (mpmath.e ** 0.93 / float(cal_N(d, 3).value())) ** r
            assert float(lhs_oracle(1, 3, r, d)) < rhs


def test_weak_constants_fail():
    cert = verify_denominator_inequality(3, 1, 1, "0.5", r_max=50)
    assert not cert.verified
    r, d = cert.failure
    assert cert.r_checked == r - 1
    assert float(lhs_oracle(1, 3, r, d)) >= (mpmath.e ** 0.5 / float(cal_N(d, 3).value())) ** r * 0.999
    assert verify_denominator_inequality(3, 1, 2, "0.5", r_max=0).status == "VerifiedUpTo(0)"


def test_verdict_is_stable_under_doubled_precision():
    a = verify_denominator_inequality(4, 1, Fraction(4_900_000), "1.60", r_max=80, prec=128)
    b = verify_denominator_inequality(4, 1, Fraction(4_900_000), "1.60", r_max=80, prec=256)
    assert a.status == b.status == "VerifiedUpTo(80)"


def test_certificate_round_trip():
    cert = verify_denominator_inequality(3, 1, 1, "0.5", r_max=20)
    assert DenominatorCertificate.from_line(cert.to_line()) == cert
    assert DenominatorCertificate.from_json(cert.to_json()) == cert
    with pytest.raises(InvalidInput):
        DenominatorCertificate.from_line("3 1 2 0.9 10")


def test_default_certificates():
    C, D = default_certificate(3, 1)
    with working_precision(100):
        assert C == 1 and abs(mpmath.exp(D.log()) - 3 * mpmath.sqrt(3)) < 1e-25
        C, D = default_certificate(7, 1)
        assert abs(mpmath.exp(D.log()) - 7 * mpmath.mpf(7) ** (mpmath.mpf(1) / 6)) < 1e-25
    with pytest.raises(NotApplicable):
        default_certificate(6, 1, "nlogn")
    with pytest.raises(NotApplicable):
        default_certificate(3, 27)


def test_default_certificate_holds_from_r_one():
    # C = 1, D = n mu_n: at r = 0 both sides equal 1, so the strict check fails there and only there
    C, D = default_certificate(5, 5)
    cert = verify_denominator_inequality(5, 1, C, D, d_set=[1, 5], r_max=60)
    assert cert.failure == (0, 1)
    assert lhs_oracle(1, 5, 0, 1) == 1
    with working_precision(100):
        growth = mpmath.exp(D.log())
        for d in (1, 5):
            step = growth / cal_N(d, 5).value()
            assert all(mpf_of(lhs_oracle(1, 5, r, d)) < step ** r for r in range(1, 61))


def test_remainder_bound_examples():
    with working_precision(200):
        assert remainder_bound_check(1, 3, 3, 125, 128, "a_real").passed
        u = mpmath.mpc(1)
        assert remainder_bound_check(1, 3, 3, u, mpmath.expj(mpmath.pi / 4), "a_circle").passed
        zero = remainder_bound_check(1, 3, 0, 125, 128, "a_real")
        assert zero.passed and zero.lhs <= zero.rhs
        with pytest.raises(CaseMismatch):
            remainder_bound_check(1, 3, 3, 1, -1, "a_circle")
        with pytest.raises(CaseMismatch):
            remainder_bound_check(1, 3, 3, 1, 3, "b_disk")


def test_remainder_bound_base_shrinks():
    # the (125, 128) instance: min |sqrt u -+ sqrt z| < 1, so the bound decays in r
    rhs = [remainder_bound_check(1, 3, r, 125, 128, "a_real").rhs for r in range(8)]
    assert all(b < a for a, b in zip(rhs, rhs[1:]))


def test_poly_bound_examples():
    with working_precision(200):
        zero = poly_bound_check(1, 3, 0, 125, 128, "a")
        assert zero.lhs == 1 and zero.passed
        assert poly_bound_check(1, 3, 5, 125, 128, "a").passed
        assert poly_bound_check(1, 4, 5, mpmath.mpc(1), mpmath.expj(2), "a").passed
        assert poly_bound_check(1, 3, 5, mpmath.mpc(1), mpmath.mpc("1.2", "0.3"), "b").passed
        with pytest.raises(CaseMismatch):
            poly_bound_check(1, 3, 5, 1, 5, "b")


def test_mu_scan_small_range():
    scan = mu_bound_scan(3000)
    assert scan.violations == []
    assert scan.exceptions_118_below_2310 == [3, 4, 6, 10, 12, 18, 30, 42, 60, 210, 420]
    with pytest.raises(InvalidInput):
        mu_bound_scan(2)
