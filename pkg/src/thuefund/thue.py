"""Thue's polynomial approximations for roots of binomial-type forms.

The form is ``F(x) = gamma1 (x - beta1)^n + gamma2 (x - beta2)^n``.  With
``U(x) = -gamma2 (x - beta2)^n`` and ``Z(x) = gamma1 (x - beta1)^n`` the
approximating pair is

    Q_r = (x - beta2) X*(Z, U) - (x - beta1) X*(U, Z)
    P_r = beta1 (x - beta2) X*(Z, U) - beta2 (x - beta1) X*(U, Z)

and ``S_r = alpha Q_r - P_r`` vanishes to order ``2r + 1`` at every root
``alpha`` of ``F``.  Thue's three-term recurrence is kept as an independent
route used for cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import mpmath

from .errors import (
    DegenerateG,
    DegeneratePoint,
    ExcludedBranch,
    InvalidInput,
    NotARoot,
    PrecisionInsufficient,
    Unclassified,
    UnsupportedBranch,
)
from .exact import QQ, Field, QuadPolynomial, QuadraticElement, qe
from .hypergeom import xstar_eval
from .numeric import DEFAULT_PREC, guard, mpf_of, working_precision


@dataclass(frozen=True)
class ThueSetup:
    """Parameters of the form plus an optional evaluation point.

    ``base`` is the field K in which approximations p/q are sought; ``field``
    is the working field holding every parameter.
    """

    beta1: QuadraticElement
    beta2: QuadraticElement
    gamma1: QuadraticElement
    gamma2: QuadraticElement
    n: int
    x: QuadraticElement | None = None
    base: Field = QQ
    field: Field = dc_field(default=QQ)

    def __post_init__(self) -> None:
        vals = {}
        for name in ("beta1", "beta2", "gamma1", "gamma2", "x"):
            v = getattr(self, name)
            if v is not None:
                vals[name] = qe(v)
                object.__setattr__(self, name, vals[name])
        fld = self.base
        for v in vals.values():
            fld = fld.join(v.field)
        object.__setattr__(self, "field", fld)
        if not isinstance(self.n, int) or self.n < 2:
            raise InvalidInput(f"n must be an integer >= 2, got {self.n!r}")
        if self.beta1 == self.beta2:
            raise DegenerateG("beta1 == beta2")
        if self.gamma1.is_zero() or self.gamma2.is_zero():
            raise InvalidInput("gamma1 and gamma2 must be nonzero")

    def at(self, x) -> "ThueSetup":
        return ThueSetup(self.beta1, self.beta2, self.gamma1, self.gamma2, self.n, qe(x), self.base)

    @property
    def case(self) -> str:
        return classify_poly_form(self.beta1, self.beta2, self.gamma1, self.gamma2, self.base)

    # auxiliary polynomials
    def U_poly(self) -> QuadPolynomial:
        return QuadPolynomial.linear_power(self.beta2, self.n) * (-self.gamma2)

    def Z_poly(self) -> QuadPolynomial:
        return QuadPolynomial.linear_power(self.beta1, self.n) * self.gamma1

    def F_poly(self) -> QuadPolynomial:
        return self.Z_poly() - self.U_poly()

    def G_poly(self) -> QuadPolynomial:
        return QuadPolynomial.linear_power(self.beta1, 1) * QuadPolynomial.linear_power(self.beta2, 1)

    # values at a point
    def U(self, x=None) -> QuadraticElement:
        x = self._point(x)
        return -self.gamma2 * (x - self.beta2) ** self.n

    def Z(self, x=None) -> QuadraticElement:
        x = self._point(x)
        return self.gamma1 * (x - self.beta1) ** self.n

    def W(self, x=None) -> QuadraticElement:
        u = self.U(x)
        if u.is_zero():
            raise DegeneratePoint("U(x) = 0, W(x) undefined")
        return self.Z(x) / u

    def F(self, x=None) -> QuadraticElement:
        return self.Z(x) - self.U(x)

    def _point(self, x):
        if x is None:
            if self.x is None:
                raise InvalidInput("no evaluation point given")
            return self.x
        return qe(x)


@dataclass(frozen=True)
class ThueAuxiliaries:
    U: QuadPolynomial
    Z: QuadPolynomial
    F: QuadPolynomial
    G: QuadPolynomial
    Y: QuadPolynomial
    thue_h: QuadraticElement
    lam: QuadraticElement
    sqrt_lam: QuadraticElement


def auxiliaries(setup: ThueSetup) -> ThueAuxiliaries:
    n = setup.n
    F, G = setup.F_poly(), setup.G_poly()
    dG = G.derivative()
    Y = G * F.derivative() * 2 - dG * F * n
    # h = (n^2 - 1)/4 (G'^2 - 2 G G''), a constant for quadratic G
    hpoly = (dG * dG - G * G.derivative(2) * 2) * Fraction(n * n - 1, 4)
    if hpoly.degree > 0:
        raise DegenerateG("G is not quadratic")
    thue_h = hpoly.coefficient(0)
    if thue_h.is_zero():
        raise DegenerateG("G has a repeated root")
    lam = thue_h / (n * n - 1)
    return ThueAuxiliaries(setup.U_poly(), setup.Z_poly(), F, G, Y, thue_h, lam,
                           (setup.beta1 - setup.beta2) / 2)


def diff_eqn_residual(G: QuadPolynomial, F: QuadPolynomial, n: int) -> QuadPolynomial:
    """sum_{i=0}^{m} (-1)^i C(n-m+i, i) G^(i) F^(m-i) with m = deg G."""
    m = G.degree
    if m < 1 or m > n:
        raise InvalidInput("need 1 <= deg G <= n")
    out = QuadPolynomial()
    for i in range(m + 1):
        out = out + G.derivative(i) * F.derivative(m - i) * ((-1) ** i * math.comb(n - m + i, i))
    return out


def thue_pq_closed(setup: ThueSetup, r: int) -> tuple[QuadPolynomial, QuadPolynomial]:
    """(P_r, Q_r) as polynomials in x from the homogeneous hypergeometric forms."""
    if r < 0:
        raise InvalidInput("r must be nonnegative")
    n = setup.n
    U, Z = setup.U_poly(), setup.Z_poly()
    xzu = xstar_eval(1, n, r, Z, U)
    xuz = xstar_eval(1, n, r, U, Z)
    a = QuadPolynomial.linear_power(setup.beta2, 1)
    b = QuadPolynomial.linear_power(setup.beta1, 1)
    Q = a * xzu - b * xuz
    P = a * xzu * setup.beta1 - b * xuz * setup.beta2
    return P, Q


def thue_pq_at(setup: ThueSetup, r: int, x=None) -> tuple[QuadraticElement, QuadraticElement]:
    """(P_r(x), Q_r(x)) evaluated exactly at a point without expanding polynomials."""
    x = setup._point(x)
    n = setup.n
    U, Z = setup.U(x), setup.Z(x)
    xzu = xstar_eval(1, n, r, Z, U)
    xuz = xstar_eval(1, n, r, U, Z)
    a, b = x - setup.beta2, x - setup.beta1
    return setup.beta1 * a * xzu - setup.beta2 * b * xuz, a * xzu - b * xuz


def thue_pq_recurrence(setup: ThueSetup, r_max: int) -> list[tuple[QuadPolynomial, QuadPolynomial]]:
    """Thue's primed sequence (P'_r, Q'_r) for r = 0..r_max from the three-term recurrence."""
    aux = auxiliaries(setup)
    n = setup.n
    F, G, Y, h, lam = aux.F, aux.G, aux.Y, aux.thue_h, aux.lam
    X = QuadPolynomial.x()
    dF, dG = F.derivative(), G.derivative()
    Q0 = QuadPolynomial([h * Fraction(2, 3)])
    P0 = X * (h * Fraction(2, 3))
    Q1 = (G * dF - dG * F * Fraction(n - 1, 2)) * Fraction(2 * (n + 1), 3)
    P1 = X * Q1 - G * F * Fraction(2 * (n + 1), 3)
    out = [(P0, Q0), (P1, Q1)]
    F2 = F * F
    for r in range(1, r_max):
        scale = (lam * (n * (r + 1) - 1)).inverse()
        (Pm, Qm), (Pr, Qr) = out[r - 1], out[r]
        Qn = (Y * Qr * Fraction(2 * r + 1, 2) - F2 * Qm * (n * r + 1)) * scale
        Pn = (Y * Pr * Fraction(2 * r + 1, 2) - F2 * Pm * (n * r + 1)) * scale
        out.append((Pn, Qn))
    return out[: r_max + 1]


def scaled_recurrence(setup: ThueSetup, r_max: int) -> list[tuple[QuadPolynomial, QuadPolynomial]]:
    """The recurrence sequence multiplied by 6/((n^2-1)(beta1-beta2)) * sqrt(lambda)^r."""
    n = setup.n
    sqrt_lam = (setup.beta1 - setup.beta2) / 2
    base = qe(6) / ((n * n - 1) * (setup.beta1 - setup.beta2))
    out = []
    for r, (P, Q) in enumerate(thue_pq_recurrence(setup, r_max)):
        c = base * sqrt_lam ** r
        out.append((P * c, Q * c))
    return out


def s_r(setup: ThueSetup, r: int, alpha, at=None, prec: int = DEFAULT_PREC):
    """alpha*Q_r - P_r.

    For an exact root in the working field the polynomial is returned.  For a
    numeric root the value at the point ``at`` is returned as an mpc.
    """
    if isinstance(alpha, (QuadraticElement, int, Fraction)):
        alpha = qe(alpha)
        if not setup.F_poly()(alpha).is_zero():
            raise NotARoot(f"{alpha} is not a root of F")
        P, Q = thue_pq_closed(setup, r)
        return Q * alpha - P
    if at is None:
        raise InvalidInput("a numeric root needs an evaluation point")
    with working_precision(prec):
        _check_numeric_root(setup, mpmath.mpc(alpha), prec)
    P, Q = thue_pq_at(setup, r, at)
    with working_precision(64):
        # alpha*Q - P cancels about log2|Q| bits; alpha keeps whatever precision it came with
        extra = max(0, int(mpmath.log(abs(Q.to_mpc()) + 1, 2)))
    with working_precision(prec + 32 + extra):
        out = alpha * Q.to_mpc() - P.to_mpc()
    with working_precision(prec):
        return +out


def _check_numeric_root(setup: ThueSetup, alpha: mpmath.mpc, prec: int) -> None:
    z = setup.gamma1.to_mpc() * (alpha - setup.beta1.to_mpc()) ** setup.n
    u = setup.gamma2.to_mpc() * (alpha - setup.beta2.to_mpc()) ** setup.n
    scale = max(abs(z), abs(u), mpmath.mpf(1))
    if abs(z + u) > guard(prec) * scale:
        raise NotARoot(f"|F(alpha)| = {mpmath.nstr(abs(z + u), 5)} exceeds the guard band")


def vanishing_order_numeric(setup: ThueSetup, r: int, alpha, prec: int = DEFAULT_PREC) -> int:
    """Order of vanishing of S_r at a numeric root, read off from its Taylor coefficients."""
    P, Q = thue_pq_closed(setup, r)
    with working_precision(prec):
        alpha = mpmath.mpc(alpha)
        _check_numeric_root(setup, alpha, prec)
        coeffs = [alpha * Q.coefficient(i).to_mpc() - P.coefficient(i).to_mpc()
                  for i in range(max(P.degree, Q.degree) + 1)]
        scale = max(abs(c) for c in coeffs) * max(1, abs(alpha)) ** len(coeffs)
        tol = guard(prec) * scale
        # Taylor coefficients at alpha via repeated synthetic division
        order = 0
        cur = coeffs
        while len(cur) > 1:
            acc = mpmath.mpc(0)
            quot = []
            for c in reversed(cur):
                acc = acc * alpha + c
                quot.append(acc)
            value = quot.pop()
            if abs(value) > tol:
                return order
            cur = list(reversed(quot))
            order += 1
        return order


def root_from_branch(setup: ThueSetup, k: int, prec: int = DEFAULT_PREC) -> mpmath.mpc:
    """alpha = (beta1 zeta - beta2)/(zeta - 1), zeta the k-th n-th root of -gamma1/gamma2."""
    n = setup.n
    if not 0 <= k < n:
        raise InvalidInput(f"branch index must lie in [0, {n})")
    ratio = -setup.gamma1 / setup.gamma2
    if ratio == 1 and k == 0:
        raise ExcludedBranch("zeta = 1 when gamma1 = -gamma2")
    with working_precision(prec + 32):
        c = ratio.to_mpc()
        zeta = mpmath.root(c, n, k)
        alpha = (setup.beta1.to_mpc() * zeta - setup.beta2.to_mpc()) / (zeta - 1)
    with working_precision(prec):
        alpha = +alpha
        _check_numeric_root(setup, alpha, prec)
    return alpha


@dataclass(frozen=True)
class RealRoots:
    count: int
    roots: list


def classify_real_roots(setup: ThueSetup, prec: int = DEFAULT_PREC) -> RealRoots:
    """Real roots of F when K = Q and beta1 generates a quadratic field."""
    if not setup.base.is_rational or setup.beta1.is_rational() or setup.field.t is None:
        raise Unclassified("classification needs K = Q and a quadratic beta1")
    if setup.beta2 != setup.beta1.conjugate() or setup.gamma2 != setup.gamma1.conjugate():
        raise Unclassified("beta2, gamma2 must be the conjugates of beta1, gamma1")
    n, t = setup.n, setup.field.t
    if t < 0:
        with working_precision(prec):
            roots = sorted((mpmath.re(root_from_branch(setup, k, prec))
                            for k in range(n)), key=float)
        return RealRoots(n, roots)
    ratio = (-setup.gamma1 / setup.gamma2)
    sign = ratio.sign()
    a, b = setup.beta1.a, setup.beta1.b
    with working_precision(prec):
        c = ratio.to_mpc().real
        sb = mpf_of(b) * mpmath.sqrt(t)
        if sign > 0:
            w = mpmath.root(c, n)
        else:
            if n % 2 == 0:
                return RealRoots(0, [])
            w = -mpmath.root(-c, n)
        alpha1 = mpf_of(a) + sb * (w + 1) / (w - 1)
        roots = [alpha1]
        if sign > 0 and n % 2 == 0:
            roots.append(mpf_of(a) + mpf_of(t * b * b) / (alpha1 - mpf_of(a)))
        for root in roots:
            _check_numeric_root(setup, mpmath.mpc(root), prec)
    return RealRoots(len(roots), roots)


def principal_root(w: mpmath.mpc, n: int) -> mpmath.mpc:
    """w^(1/n) with the argument in (-pi, pi]."""
    return mpmath.root(w, n)


def _w_numeric(setup: ThueSetup, x) -> mpmath.mpc:
    W = setup.W(x)
    if W.is_zero() or (W.is_real() and W.sign() < 0):
        raise UnsupportedBranch("W(x) is zero or a negative real")
    return W.to_mpc()


def script_A(setup: ThueSetup, x=None, prec: int = DEFAULT_PREC) -> mpmath.mpc:
    """The root of F selected by the principal n-th root of W(x)."""
    x = setup._point(x)
    with working_precision(prec + 32):
        w = principal_root(_w_numeric(setup, x), setup.n)
        b1, b2, xv = setup.beta1.to_mpc(), setup.beta2.to_mpc(), x.to_mpc()
        den = (xv - b2) * w - (xv - b1)
        if den == 0:
            raise DegeneratePoint("denominator of the root map vanishes")
        val = (b1 * (xv - b2) * w - b2 * (xv - b1)) / den
    with working_precision(prec):
        val = +val
        _check_numeric_root(setup, val, prec)
    return val


def remainder_R(m: int, n: int, r: int, w, prec: int = DEFAULT_PREC) -> mpmath.mpc:
    """Gamma(r+1+m/n)/(Gamma(m/n) r!) * integral_1^w ((1-t)(t-w))^r t^(m/n-r-1) dt.

    The path is the segment [1, w] when w is a positive real or |1 - w| < 1,
    otherwise the segment [1, |w|] followed by the arc of radius |w| to w.
    """
    work = prec + 32
    with working_precision(work):
        w = mpmath.mpc(w)
        if w == 0 or (w.imag == 0 and w.real < 0):
            raise UnsupportedBranch("w is zero or a negative real")
        a = mpmath.mpf(m) / n
        coef = mpmath.gamma(r + 1 + a) / (mpmath.gamma(a) * mpmath.factorial(r))
        tol = mpmath.ldexp(1, -prec + 16)

        def integrand(t):
            return ((1 - t) * (t - w)) ** r * mpmath.power(t, a - r - 1)

        def quad(f, lo, hi):
            # error target relative to the size of the integrand along the path
            # mpmath's error estimate has an absolute floor, so integrate f/size
            size = max(abs(f(lo + (hi - lo) * k / 8)) for k in range(9))
            if size == 0:
                return mpmath.mpc(0)
            g = lambda s: f(s) / size
            val, err = mpmath.quad(g, [lo, (lo + hi) / 2, hi], error=True, maxdegree=10)
            if err > tol:
                val, err = mpmath.quad(g, mpmath.linspace(lo, hi, 9), error=True, maxdegree=12)
                if err > tol:
                    raise PrecisionInsufficient("quadrature did not converge")
            return val * size

        if (w.imag == 0 and w.real > 0) or abs(1 - w) < 1:
            d = w - 1
            total = d * quad(lambda s: integrand(1 + s * d), 0, 1)
        else:
            rho, phi = abs(w), mpmath.arg(w)
            total = mpmath.mpc(0)
            if abs(rho - 1) > mpmath.ldexp(1, -work // 2):
                total += (rho - 1) * quad(lambda s: integrand(1 + s * (rho - 1)), 0, 1)
            else:
                rho = mpmath.mpf(1)  # on the unit circle up to rounding
            arc = lambda th: integrand(rho * mpmath.expj(th)) * 1j * rho * mpmath.expj(th)
            total += quad(arc, 0, phi)
        out = coef * total
    with working_precision(prec):
        return +out


def rembnd_reconstruction(setup: ThueSetup, r: int, alpha, x=None, prec: int = DEFAULT_PREC) -> mpmath.mpc:
    """S_r(x) rebuilt from the hypergeometric value and the remainder integral.

    The first term is a large multiple of a quantity that vanishes when
    alpha = A(x), so the working precision is raised by the size of X*(U, Z).
    """
    x = setup._point(x)
    n = setup.n
    U, Z = setup.U(x), setup.Z(x)
    xuz_exact = xstar_eval(1, n, r, U, Z)
    with working_precision(64):
        extra = max(0, int(mpmath.log(abs(xuz_exact.to_mpc()) + 1, 2)))
    with working_precision(prec + 32 + extra):
        wv = _w_numeric(setup, x)
        wn = principal_root(wv, n)
        b1, b2, xv = setup.beta1.to_mpc(), setup.beta2.to_mpc(), x.to_mpc()
        al = alpha.to_mpc() if isinstance(alpha, QuadraticElement) else mpmath.mpc(alpha)
        first = (al * ((xv - b2) * wn - (xv - b1)) - (b1 * (xv - b2) * wn - b2 * (xv - b1))) * xuz_exact.to_mpc()
        R = remainder_R(1, n, r, wv, prec + 32 + extra)
        out = first - (xv - b2) * (al - b1) * U.to_mpc() ** r * R
    with working_precision(prec):
        return +out


def distinctness_check(setup: ThueSetup, r: int, x=None) -> bool:
    """True iff P_{r+1} Q_r != P_r Q_{r+1} at the point x."""
    x = setup._point(x)
    if (x - setup.beta1).is_zero() or (x - setup.beta2).is_zero() or setup.F(x).is_zero():
        raise DegeneratePoint("(x - beta1)(x - beta2)F(x) vanishes")
    P0, Q0 = thue_pq_at(setup, r, x)
    P1, Q1 = thue_pq_at(setup, r + 1, x)
    return P1 * Q0 != P0 * Q1


def classify_poly_form(beta1, beta2, gamma1, gamma2, K: Field) -> str:
    """Case tag 'a', 'b', 'c' or 'invalid' for the shape of the form over K."""
    beta1, beta2, gamma1, gamma2 = (qe(v) for v in (beta1, beta2, gamma1, gamma2))
    if beta1 == beta2:
        raise InvalidInput("beta1 == beta2")
    if gamma1.is_zero() or gamma2.is_zero():
        return "a"
    if all(v.in_field(K) for v in (beta1, beta2, gamma1, gamma2)):
        return "b"
    if not beta1.in_field(K) and beta2 == beta1.conjugate() and gamma2 == gamma1.conjugate():
        return "c"
    return "invalid"
