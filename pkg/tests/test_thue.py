from __future__ import annotations

import random
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from thuefund.errors import DegeneratePoint, ExcludedBranch, NotARoot, UnsupportedBranch
from thuefund.exact import QQ, Field, QuadPolynomial, qe
from thuefund.measures import corollary1_setup
from thuefund.numeric import working_precision
from thuefund.suites import random_setup, rational_root_setup
from thuefund.thue import (
    ThueSetup,
    auxiliaries,
    classify_real_roots,
    diff_eqn_residual,
    distinctness_check,
    principal_root,
    remainder_R,
    root_from_branch,
    s_r,
    scaled_recurrence,
    script_A,
    thue_pq_closed,
    thue_pq_recurrence,
    vanishing_order_numeric,
)

X = QuadPolynomial.x()
GAUSS = Field(-1)
I = GAUSS.sqrt_t()


def lin(root, k=1):
    return QuadPolynomial.linear_power(qe(root), k)


def to_sympy(p: QuadPolynomial, x):
    return sum(sympy.Rational(c.a.numerator, c.a.denominator) * x ** k for k, c in enumerate(p.coeffs))


# -- differential equation ------------------------------------------------------

def test_diff_eqn_residuals():
    G = lin(0) * lin(1)
    assert diff_eqn_residual(lin(0) * lin(1), lin(0, 5), 5).is_zero()
    assert not diff_eqn_residual(G, X ** 4 + QuadPolynomial([1]), 4).is_zero()
    G3 = lin(1) * lin(2) * lin(3)
    F3 = lin(1, 6) + lin(2, 6) * 2 - lin(3, 6)
    assert diff_eqn_residual(G3, F3, 6).is_zero()


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 8), st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
def test_two_term_forms_solve_the_equation(n, b1, b2, g1, g2):
    if b1 == b2:
        return
    F = lin(b1, n) * g1 + lin(b2, n) * g2
    assert diff_eqn_residual(lin(b1) * lin(b2), F, n).is_zero()


# -- the approximation polynomials ----------------------------------------------------

def test_first_polynomials():
    s = rational_root_setup()
    P0, Q0 = thue_pq_closed(s, 0)
    assert Q0 == QuadPolynomial([s.beta1 - s.beta2])
    assert P0 == X * (s.beta1 - s.beta2)
    # r = 1 by hand from X*_{1,3,1}(z, u) = u + 2z
    x = sympy.Symbol("x")
    U, Z = -(x - 1) ** 3, -8 * x ** 3
    Q1 = sympy.expand((x - 1) * (U + 2 * Z) - x * (Z + 2 * U))
    P1 = sympy.expand(0 * (x - 1) * (U + 2 * Z) - 1 * x * (Z + 2 * U))
    P, Q = thue_pq_closed(s, 1)
    assert sympy.expand(to_sympy(Q, x) - Q1) == 0
    assert sympy.expand(to_sympy(P, x) - P1) == 0


def test_degrees():
    for s in (rational_root_setup(), ThueSetup(qe(2), qe(-1), qe(3), qe(5), 4)):
        P, Q = thue_pq_closed(s, 0)
        assert (P.degree, Q.degree) == (1, 0)
        for r in range(1, 6):
            P, Q = thue_pq_closed(s, r)
            assert P.degree == Q.degree == s.n * r + 1


def test_thue_initial_value():
    s = ThueSetup(qe(2), qe(-1), qe(3), qe(5), 4)
    aux = auxiliaries(s)
    assert aux.thue_h == Fraction(15 * 9, 4)
    assert thue_pq_recurrence(s, 0)[0][1] == QuadPolynomial([aux.thue_h * Fraction(2, 3)])


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_closed_form_matches_recurrence(seed):
    s = random_setup(random.Random(seed))
    rec = scaled_recurrence(s, 8)
    for r in range(9):
        assert thue_pq_closed(s, r) == rec[r]


def test_rational_root_divisibility():
    s = rational_root_setup()
    for r in range(11):
        S = s_r(s, r, -1)
        _, rem = S.divmod(lin(-1, 2 * r + 1))
        assert rem.is_zero()
        assert S.multiplicity_at(-1) >= 2 * r + 1


def test_gaussian_root_divisibility():
    # -gamma1/gamma2 = -4 = (1 + i)^4, so alpha = (beta1 w - beta2)/(w - 1) = 1 + 3i lies in Q(i)
    s = ThueSetup(I, qe(2, GAUSS), qe(4, GAUSS), qe(1, GAUSS), 4, base=GAUSS)
    alpha = 1 + 3 * I
    assert s.F(alpha).is_zero()
    for r in range(6):
        _, rem = s_r(s, r, alpha).divmod(lin(alpha, 2 * r + 1))
        assert rem.is_zero()
    with pytest.raises(NotARoot):
        s_r(s, 1, 1 + 2 * I)


def test_numeric_vanishing_order():
    s = ThueSetup(qe(0), qe(1), qe(-3), qe(1), 3)
    alpha = root_from_branch(s, 0)
    for r in range(5):
        assert vanishing_order_numeric(s, r, alpha) >= 2 * r + 1


# -- roots -----------------------------------------------------------------

def test_branch_roots():
    s = rational_root_setup()
    with working_precision(200):
        assert abs(root_from_branch(s, 0) + 1) < mpmath.mpf(2) ** -150
    s = ThueSetup(I, -I, 1 + 2 * I, 1 - 2 * I, 5, base=GAUSS)
    with working_precision(200):
        roots = [root_from_branch(s, k) for k in range(5)]
        for a in roots:
            F = (1 + 2j) * (a - 1j) ** 5 + (1 - 2j) * (a + 1j) ** 5
            assert abs(F) < mpmath.mpf(2) ** -150
        assert min(abs(a - b) for k, a in enumerate(roots) for b in roots[k + 1:]) > 1e-3
    with pytest.raises(ExcludedBranch):
        root_from_branch(ThueSetup(qe(0), qe(1), qe(-1), qe(1), 3), 0)


def test_real_root_counts():
    w = Field(-3).sqrt_t()
    s = ThueSetup(1 + w, 1 - w, 2 + w, 2 - w, 5)
    assert classify_real_roots(s).count == 5
    r5 = Field(5).sqrt_t()
    # -gamma1/gamma2 = -(2 + sqrt5)/(2 - sqrt5) > 0
    even_pos = ThueSetup(1 + r5, 1 - r5, 2 + r5, 2 - r5, 4)
    res = classify_real_roots(even_pos)
    assert res.count == 2
    a1 = res.roots[0]
    with working_precision(200):
        assert abs(res.roots[1] - (1 + 5 / (a1 - 1))) < mpmath.mpf(2) ** -150
    even_neg = ThueSetup(1 + r5, 1 - r5, 3 + r5, 3 - r5, 4)
    assert classify_real_roots(even_neg).count == 0


def test_script_A_fixed_point_and_embedding():
    s = rational_root_setup()
    assert s.W(-1) == 1
    with working_precision(200):
        assert abs(script_A(s, qe(-1)) + 1) < mpmath.mpf(2) ** -150
    setup, _ = corollary1_setup(128, 125, 3)
    with working_precision(200):
        a, b, n = mpmath.mpf(128), mpmath.mpf(125), 3
        e = (b / a) ** (mpmath.mpf(n - 1) / n)
        alpha = -(b - a) * e / (1 - e)
        assert abs(script_A(setup) - alpha) < mpmath.mpf(2) ** -150


def test_principal_root_branch():
    with working_precision(100):
        assert abs(principal_root(mpmath.mpc(-8), 3) - (1 + mpmath.sqrt(3) * 1j)) < 1e-25
        assert abs(principal_root(mpmath.mpc(8), 3) - 2) < 1e-25


# -- remainder integral ------------------------------------------------------------

def test_remainder_at_r_zero():
    with working_precision(200):
        for w in (mpmath.mpf("0.6"), mpmath.expj(1), mpmath.mpc("0.8", "0.3")):
            R = remainder_R(1, 3, 0, w)
            assert abs(R - (principal_root(mpmath.mpc(w), 3) - 1)) < mpmath.mpf(10) ** -40
        assert remainder_R(1, 3, 1, mpmath.mpf(1)) == 0
    with pytest.raises(UnsupportedBranch):
        remainder_R(1, 3, 1, mpmath.mpf(-2))


def test_distinctness():
    s = rational_root_setup().at(2)
    assert all(distinctness_check(s, r) for r in range(21))
    with pytest.raises(DegeneratePoint):
        distinctness_check(rational_root_setup().at(0), 1)
    with pytest.raises(DegeneratePoint):
        distinctness_check(rational_root_setup().at(-1), 1)


def test_base_field_defaults_to_rationals():
    assert rational_root_setup().base == QQ
