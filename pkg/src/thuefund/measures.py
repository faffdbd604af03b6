"""Effective irrationality measures from Thue's approximations.

Every pipeline ends in the same shape of statement,

    |theta - p/q| > 1 / (c |q|^(kappa + 1))   for all integral p, q with q != 0,

with ``kappa = log Q / log E``.  Quantities are computed at ``prec + 64`` bits
and then widened by the relative guard ``2^(-prec/2)``: E downwards, Q, kappa
and c upwards, so an emitted measure stays valid under rounding.  The widening
factor is stored as ``slack``.
"""

from __future__ import annotations

import json
import math
import statistics
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable

import mpmath

from .bounds import DConstant, DenominatorCertificate, default_certificate, table_constants
from .errors import (
    ConstructionBug,
    DegeneratePoint,
    InvalidInput,
    NotApplicable,
    SingularTransform,
    Undefined,
    UnsupportedBranch,
)
from .exact import (
    QQ,
    Field,
    PrimePowerProduct,
    QuadraticElement,
    core,
    factorint,
    generates_unit_ideal,
    is_squarefree,
    qe,
    rational_content_divisor,
)
from .hypergeom import big_D, big_N, cal_N
from .numeric import DEFAULT_PREC, decide_greater, directed_float, guard, mpf_of, working_precision
from .thue import ThueSetup, classify_poly_form, principal_root, remainder_R, script_A, thue_pq_at

__all__ = [
    "ApproximationState",
    "Cor2GData",
    "MeasureResult",
    "SequenceParams",
    "Surd",
    "build_sequence",
    "consecutive_distinct",
    "classify_poly_form",
    "corollary1",
    "corollary1_setup",
    "corollary2",
    "corollary2_gdata",
    "corollary2_setup",
    "fit_rates",
    "measure_from_sequence",
    "resolve_certificate",
    "theorem1",
    "theorem2",
    "transform_measure",
    "transform_result",
]

EXTRA_BITS = 64


# ---------------------------------------------------------------------------
# results


@dataclass(frozen=True)
class MeasureResult:
    """A computed measure; ``E`` is rounded down, ``Q``, ``kappa`` and ``c`` up.

    ``kappa`` and ``c`` are ``None`` when the result is not applicable.  ``theta``
    is the approximated number and ``field`` the ring of integers the measure
    speaks about; both are used by the brute-force validator.
    """

    pipeline: str
    inputs: dict
    E: mpmath.mpf | None
    Q: mpmath.mpf | None
    kappa: mpmath.mpf | None
    c: mpmath.mpf | None
    applicable: bool
    precision_bits: int
    slack: mpmath.mpf
    theta: mpmath.mpc | None = None
    field: Field = QQ
    details: dict = dc_field(default_factory=dict)

    @property
    def exponent(self) -> mpmath.mpf | None:
        """kappa + 1, the exponent of |q| in the measure."""
        return None if self.kappa is None else self.kappa + 1

    def to_dict(self) -> dict:
        def f(x, direction):
            return None if x is None else directed_float(x, direction)

        return {
            "pipeline": self.pipeline,
            "inputs": dict(self.inputs),
            "E": f(self.E, "d"),
            "Q": f(self.Q, "u"),
            "kappa": f(self.kappa, "u"),
            "c": f(self.c, "u"),
            "applicable": self.applicable,
            "precision_bits": self.precision_bits,
            "slack": f(self.slack, "u"),
            "theta": None if self.theta is None else complex_text(self.theta),
            "K": str(self.field),
            "details": {k: _jsonable(v) for k, v in self.details.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def summary(self) -> str:
        if not self.applicable:
            return f"{self.pipeline}: E = {mpmath.nstr(self.E, 3)} < 1, not applicable"
        return (f"{self.pipeline}: |theta - p/q| > 1/(c |q|^(kappa+1)) with "
                f"kappa + 1 = {mpmath.nstr(self.kappa + 1, 6)}, c = {mpmath.nstr(self.c, 6)}")


def complex_text(z) -> str:
    """30 significant digits, real numbers without an imaginary part."""
    z = mpmath.mpc(z)
    if z.imag == 0:
        return mpmath.nstr(z.real, 30)
    return f"{mpmath.nstr(z.real, 30)}{'+' if z.imag >= 0 else '-'}{mpmath.nstr(abs(z.imag), 30)}j"


def _jsonable(v):
    if isinstance(v, (mpmath.mpf, mpmath.mpc)):
        return complex_text(v)
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


@dataclass(frozen=True)
class SequenceParams:
    """Constants of a sequence with |q_r| <= k0 Q^r and |s_r| <= l0 E^(-r)."""

    k0: mpmath.mpf
    l0: mpmath.mpf
    E: mpmath.mpf
    Q: mpmath.mpf

    def __post_init__(self) -> None:
        for name in ("k0", "l0", "E", "Q"):
            object.__setattr__(self, name, mpmath.mpf(getattr(self, name)))
        if self.k0 <= 0 or self.l0 <= 0:
            raise InvalidInput("k0 and l0 must be positive")


def _finish(pipeline: str, inputs: dict, E, Q, c_of: Callable, prec: int, *, theta=None,
            field: Field = QQ, details: dict | None = None) -> MeasureResult:
    """Round E down and Q up, decide E > 1, then form kappa and c rounded up.

    ``c_of(E, Q, kappa)`` must be increasing in each argument on the
    applicable range; it is evaluated at the upper ends.
    """
    details = dict(details or {})
    g = guard(prec)
    with working_precision(prec + EXTRA_BITS):
        E_dn, E_up, Q_up = E * (1 - g), E * (1 + g), Q * (1 + g)
        applicable = decide_greater(E, mpmath.mpf(1), prec) and decide_greater(Q, mpmath.mpf(1), prec)
        kappa = c = None
        if applicable:
            kappa = mpmath.log(Q_up) / mpmath.log(E_dn) * (1 + g)
            c = c_of(E_up, Q_up, kappa) * (1 + g)
    result = MeasureResult(pipeline, inputs, E_dn, Q_up, kappa, c, applicable, prec, g,
                           theta, field, details)
    if not applicable:
        raise NotApplicable(f"E = {mpmath.nstr(E, 3)} < 1", result)
    return result


def measure_from_sequence(params: SequenceParams, prec: int = DEFAULT_PREC) -> MeasureResult:
    """kappa = log Q/log E and c = 2 k0 Q (2 l0 E)^kappa, valid for |q| >= 1/(2 l0)."""
    with working_precision(prec + EXTRA_BITS):
        k0, l0 = params.k0, params.l0

        def c_of(E, Q, kappa):
            return 2 * k0 * Q * (2 * l0 * E) ** kappa

        return _finish("Approx", {"k0": str(k0), "l0": str(l0), "E": str(params.E), "Q": str(params.Q)},
                       params.E, params.Q, c_of, prec,
                       details={"q_threshold": 1 / (2 * l0)})


# ---------------------------------------------------------------------------
# Moebius transforms


def transform_measure(C, kappa, theta, a1, a2, a3, a4, prec: int = DEFAULT_PREC):
    """Carry |q theta - p| > C |q|^-kappa over to theta' = (a1 theta + a2)/(a3 theta + a4).

    Returns ``(C', kappa, theta')`` with C' rounded down.
    """
    a1, a2, a3, a4 = (qe(a) for a in (a1, a2, a3, a4))
    for a in (a1, a2, a3, a4):
        if not a.is_algebraic_integer():
            raise InvalidInput(f"transform entry {a} is not an algebraic integer")
    if (a1 * a4 - a2 * a3).is_zero():
        raise SingularTransform("a1 a4 - a2 a3 = 0")
    g = guard(prec)
    with working_precision(prec + EXTRA_BITS):
        C, kappa, theta = mpmath.mpf(C), mpmath.mpf(kappa), mpmath.mpc(theta)
        if C <= 0 or kappa <= 0:
            raise InvalidInput("C and kappa must be positive")
        den = a3.to_mpc() * theta + a4.to_mpc()
        if abs(den) == 0:
            raise DegeneratePoint("a3 theta + a4 vanishes")
        theta2 = (a1.to_mpc() * theta + a2.to_mpc()) / den
        scale = abs(den) * (abs(a3.to_mpc()) * (1 + abs(theta2)) + abs(a1.to_mpc())) ** kappa
        C2 = C / (scale * (1 + g))
    return C2, kappa, theta2


def transform_result(result: MeasureResult, a1, a2, a3, a4) -> MeasureResult:
    """Apply :func:`transform_measure` to an applicable measure (with C = 1/c)."""
    if not result.applicable or result.theta is None:
        raise InvalidInput("only an applicable measure with a known theta can be transformed")
    prec = result.precision_bits
    g = guard(prec)
    with working_precision(prec + EXTRA_BITS):
        C = 1 / (result.c * (1 + g))
    C2, kappa, theta2 = transform_measure(C, result.kappa, result.theta, a1, a2, a3, a4, prec)
    with working_precision(prec + EXTRA_BITS):
        c2 = (1 / C2) * (1 + g)
    inputs = {"from": result.pipeline, **{k: str(v) for k, v in zip(("a1", "a2", "a3", "a4"), (a1, a2, a3, a4))}}
    field = result.field
    for a in (a1, a2, a3, a4):
        field = field.join(qe(a).field) if not qe(a).is_rational() else field
    return MeasureResult("Transform", inputs, result.E, result.Q, kappa, c2, True, prec, g,
                         theta2, field, {"C": C2, "source_c": result.c})


# ---------------------------------------------------------------------------
# certificates and surds


def resolve_certificate(cert, n: int, d: int) -> tuple[Fraction, DConstant, str]:
    """(C, D, label) from a certificate choice.

    ``cert`` is one of 'table1', 'table1-d2' (tabulated constants), 'nmu',
    'nlogn' (the constants valid for every r when calN divides n), a verified
    :class:`DenominatorCertificate`, or a pair (C, D) with D a DConstant or a
    value of log D.
    """
    if isinstance(cert, str):
        if cert in ("table1", "table1-d2"):
            C, D = table_constants(n, cert)
            return C, D, cert
        if cert in ("nmu", "nlogn"):
            C, D = default_certificate(n, d, cert)
            return C, D, cert
        raise InvalidInput(f"unknown certificate {cert!r}")
    if isinstance(cert, DenominatorCertificate):
        if cert.n != n or cert.m != 1:
            raise InvalidInput(f"certificate is for (n, m) = ({cert.n}, {cert.m}), need ({n}, 1)")
        if not cert.verified:
            raise InvalidInput(f"certificate status is {cert.status}")
        return cert.C, cert.D, cert.to_line()
    C, D = cert
    D = D if isinstance(D, DConstant) else DConstant.from_log(Fraction(D))
    return Fraction(C), D, f"C={C} logD={D}"


@dataclass(frozen=True)
class Surd:
    """The real or complex number coeff * sqrt(k) with k a positive squarefree integer."""

    coeff: QuadraticElement
    k: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", qe(self.coeff))
        if not isinstance(self.k, int) or self.k < 1 or not is_squarefree(self.k):
            raise InvalidInput(f"surd radicand must be a positive squarefree integer, got {self.k!r}")
        if self.coeff.is_zero():
            raise InvalidInput("surd must be nonzero")

    def square(self) -> QuadraticElement:
        return self.coeff * self.coeff * self.k

    def is_algebraic_integer(self) -> bool:
        return self.square().is_algebraic_integer()

    def to_mpc(self) -> mpmath.mpc:
        return self.coeff.to_mpc() * mpmath.sqrt(self.k)

    def __str__(self) -> str:
        return str(self.coeff) if self.k == 1 else f"({self.coeff})*sqrt({self.k})"


def _surd(x) -> Surd:
    return x if isinstance(x, Surd) else Surd(qe(x))


# ---------------------------------------------------------------------------
# shared set-up for Theorems 1 and 2


@dataclass(frozen=True)
class _Prepared:
    setup: ThueSetup
    x: QuadraticElement
    U: QuadraticElement
    Z: QuadraticElement
    W: QuadraticElement
    g: Surd
    h_even: Surd
    h_odd: Surd
    h: mpmath.mpf
    d: int
    calN: PrimePowerProduct
    C: Fraction
    D: DConstant
    cert_label: str
    quadratic_beta: bool


def _w_region(W: QuadraticElement) -> str:
    """'interval' for 0 < W < 1, 'circle' for |W| = 1; anything else is rejected."""
    if W == 1:
        raise DegeneratePoint("W(x) = 1: x is a root of the form")
    if W == -1:
        raise UnsupportedBranch("W(x) = -1 is excluded")
    if W.is_real():
        if W.sign() > 0 and (1 - W).sign() > 0:
            return "interval"
        raise UnsupportedBranch(f"W(x) = {W} is real but not in (0, 1)")
    if W.abs2() == 1:
        return "circle"
    raise UnsupportedBranch(f"W(x) = {W} is neither in (0, 1) nor on the unit circle")


def _prepare(setup: ThueSetup, g, h_rule, h, tau, cert) -> _Prepared:
    if setup.n < 3:
        raise InvalidInput("n must be at least 3")
    if setup.x is None:
        raise InvalidInput("the setup needs an evaluation point x")
    K = setup.base
    if K.t is not None and K.t > 0:
        raise InvalidInput("K must be Q or an imaginary quadratic field")
    if tau is not None and qe(tau) != 1:
        raise UnsupportedBranch("only tau = 1 is supported (K(beta1) is K or K = Q)")
    case = setup.case
    if case != "b" and case != "c":
        raise InvalidInput(f"the parameters do not have an admissible shape (case {case})")
    quadratic_beta = case == "c"
    if quadratic_beta and not K.is_rational:
        raise UnsupportedBranch("beta1 quadratic over an imaginary quadratic K needs tau != 1")
    x = setup.x
    if not x.in_field(K) or not x.is_algebraic_integer():
        raise InvalidInput("x must be an algebraic integer in K")
    for name in ("beta1", "beta2"):
        if not getattr(setup, name).is_algebraic_integer():
            raise InvalidInput(f"{name} must be an algebraic integer")
    U, Z = setup.U(x), setup.Z(x)
    if U.is_zero() or Z.is_zero():
        raise DegeneratePoint("x is a root of (x - beta1)(x - beta2)")
    if U == Z:
        raise DegeneratePoint("W(x) = 1: x is a root of the form")
    W = Z / U

    g = _surd(g)
    if not g.coeff.in_field(K):
        raise InvalidInput("the rational part of g must lie in K")
    if h_rule is None:
        h_rule = (Surd(qe(1)), Surd(qe(1), g.k))
    h_even, h_odd = (_surd(v) for v in h_rule)
    if h_even.k != 1 or h_odd.k != g.k:
        raise InvalidInput("h_r / g^r must lie in K: need h_even rational over K and h_odd with the radicand of g")
    for v in (h_even, h_odd):
        if not v.coeff.in_field(K) or not v.is_algebraic_integer():
            raise InvalidInput(f"h_r = {v} must be an algebraic integer with coefficient in K")
    for name, v in (("U", U), ("Z", Z)):
        if not (v * v / g.square()).is_algebraic_integer():
            raise InvalidInput(f"{name}(x)/g is not an algebraic integer")
    y = (U - Z) * (U - Z) / g.square()
    e = rational_content_divisor(y)
    d = 1
    for p, k in factorint(e).items():
        d *= p ** (k // 2)
    C, D, label = resolve_certificate(cert, setup.n, d)
    with working_precision(DEFAULT_PREC):
        h_max = max(abs(h_even.to_mpc()), abs(h_odd.to_mpc()))
    if h is None:
        h = h_max
    else:
        h = mpmath.mpf(h)
        if h < h_max:
            raise InvalidInput(f"h = {h} is below max |h_r| = {h_max}")
    return _Prepared(setup, x, U, Z, W, g, h_even, h_odd, h, d, cal_N(d, setup.n), C, D, label, quadratic_beta)


def _common_numbers(pp: _Prepared, prec: int) -> dict:
    """Numeric values shared by the theorem displays, at the current precision."""
    s = pp.setup
    Uc, Zc = pp.U.to_mpc(), pp.Z.to_mpc()
    su, sz = mpmath.sqrt(Uc), mpmath.sqrt(Zc)
    lo, hi = sorted((abs(su - sz), abs(su + sz)))
    A = script_A(s, pp.x, prec + EXTRA_BITS)
    xv = pp.x.to_mpc()
    b1, b2 = s.beta1.to_mpc(), s.beta2.to_mpc()
    wn = principal_root(pp.W.to_mpc(), s.n)
    return {
        "U": Uc, "Z": Zc, "lo": lo, "hi": hi, "A": A,
        "g_abs": abs(pp.g.to_mpc()),
        "N": pp.calN.value(), "D": mpmath.exp(pp.D.log()), "C": mpf_of(pp.C),
        "dist_sum": abs(xv - b1) + abs(xv - b2),
        # h |1 - W^(1/n)| |x - beta2| |A - beta1|
        "tail": pp.h * abs(1 - wn) * abs(xv - b2) * abs(A - b1),
    }


def _theorem_inputs(pp: _Prepared) -> dict:
    s = pp.setup
    return {"beta1": str(s.beta1), "beta2": str(s.beta2), "gamma1": str(s.gamma1), "gamma2": str(s.gamma2),
            "n": str(s.n), "x": str(pp.x), "K": str(s.base), "g": str(pp.g), "h": mpmath.nstr(pp.h, 20),
            "cert": pp.cert_label}


def theorem1(setup: ThueSetup, g, h=None, tau=None, cert="table1", h_rule=None,
             prec: int = DEFAULT_PREC) -> MeasureResult:
    """Measure for the root A(x) selected by the principal branch, when 0 < W(x) < 1 or |W(x)| = 1.

    ``g`` is a :class:`Surd` (or an element of K) with U(x)/g and Z(x)/g
    integral; ``h_rule`` is the pair (h_r for even r, h_r for odd r).
    """
    pp = _prepare(setup, g, h_rule, h, tau, cert)
    region = _w_region(pp.W)
    with working_precision(prec + EXTRA_BITS):
        v = _common_numbers(pp, prec)
        E = v["g_abs"] * v["N"] / v["D"] / v["lo"] ** 2
        Q = v["D"] / (v["g_abs"] * v["N"]) * v["hi"] ** 2
        C, h = v["C"], pp.h
        front = 4 * h * v["dist_sum"] * C
        k0 = 2 * h * v["dist_sum"] * C
        l0 = max(mpmath.mpf(0.5), mpmath.mpf("2.4") * v["tail"] * C)
        _check_threshold(l0)

        def c_of(E_, Q_, kappa):
            return front * Q_ * max(mpmath.mpf(1), 5 * v["tail"] * C * E_) ** kappa

        details = {"d": pp.d, "calN": str(pp.calN), "W_region": region, "k0": k0, "l0": l0,
                   "A": v["A"], "q_threshold": 1 / (2 * l0)}
        result = _finish_with_lemma("Thm1", _theorem_inputs(pp), E, Q, c_of, k0, l0, prec,
                                    theta=v["A"], field=setup.base, details=details)
    return result


def theorem2(setup: ThueSetup, g, h=None, tau=None, cert="table1", h_rule=None,
             prec: int = DEFAULT_PREC) -> MeasureResult:
    """Measure for A(x) over an imaginary quadratic K when W(x) is close to 1."""
    if not setup.base.is_imaginary:
        raise InvalidInput("this pipeline needs K imaginary quadratic")
    pp = _prepare(setup, g, h_rule, h, tau, cert)
    W = pp.W
    if W == 1:
        raise NotApplicable("Z(x) - U(x) = 0, E is undefined")
    if not ((1 - W).abs2() < 1 and (1 - 1 / W).abs2() < 1):
        raise UnsupportedBranch("need max(|1 - W|, |1 - 1/W|) < 1")
    diff2 = (pp.Z - pp.U).abs2()
    with working_precision(prec + EXTRA_BITS):
        v = _common_numbers(pp, prec)
        absU, absZ = abs(v["U"]), abs(v["Z"])
        absD = mpmath.sqrt(mpf_of(diff2))
        scale = v["g_abs"] * v["N"] / v["D"]
        E = scale * 4 * (absU - absD) / absD ** 2
        Q = 2 * (absU + absZ) / scale
        C, h = v["C"], pp.h
        front = 4 * h * v["dist_sum"] * C
        k0 = 2 * h * v["dist_sum"] * C
        l0 = max(mpmath.mpf(0.5), v["tail"] * C)
        _check_threshold(l0)
        if pp.U.abs2() <= diff2:
            result = MeasureResult("Thm2", _theorem_inputs(pp), E, Q, None, None, False, prec, guard(prec),
                                   v["A"], setup.base, {"d": pp.d})
            raise NotApplicable("|U(x)| <= |Z(x) - U(x)|, E is not positive", result)

        def c_of(E_, Q_, kappa):
            return front * Q_ * max(mpmath.mpf(1), 2 * v["tail"] * C * E_) ** kappa

        details = {"d": pp.d, "calN": str(pp.calN), "k0": k0, "l0": l0, "A": v["A"],
                   "q_threshold": 1 / (2 * l0)}
        return _finish_with_lemma("Thm2", _theorem_inputs(pp), E, Q, c_of, k0, l0, prec,
                                  theta=v["A"], field=setup.base, details=details)


def _check_threshold(l0) -> None:
    if 1 / (2 * l0) > 1:
        raise ConstructionBug("1/(2 l0) exceeds 1")


def _finish_with_lemma(pipeline, inputs, E, Q, c_of, k0, l0, prec, **kw) -> MeasureResult:
    """As :func:`_finish`, also recording c = 2 k0 Q (2 l0 E)^kappa from the sequence constants.

    The displayed c and the sequence-lemma c can differ; ``c_display_covers_lemma``
    records whether the displayed value is at least the lemma value.
    """
    result = _finish(pipeline, inputs, E, Q, c_of, prec, **kw)
    g = result.slack
    with working_precision(prec + EXTRA_BITS):
        E_up = E * (1 + g)
        c_lemma = 2 * k0 * result.Q * (2 * l0 * E_up) ** result.kappa * (1 + g)
    result.details["c_lemma"] = c_lemma
    result.details["c_display_covers_lemma"] = bool(result.c >= c_lemma)
    return result


# ---------------------------------------------------------------------------
# the (a/b)^(1/n) pipeline


def _cor1_field(a: QuadraticElement, b: QuadraticElement) -> Field:
    K = a.field.join(b.field)
    if K.t is not None and K.t > 0:
        raise InvalidInput("a and b must lie in Q or an imaginary quadratic field")
    return K


def corollary1(a, b, n: int, cert="table1", prec: int = DEFAULT_PREC) -> MeasureResult:
    """Measure for (a/b)^(1/n), a and b coprime integers of K with a/b > 1 rational or |a/b| = 1."""
    a, b = qe(a), qe(b)
    K = _cor1_field(a, b)
    if not isinstance(n, int) or n < 3:
        raise InvalidInput("n must be an integer >= 3")
    if a.is_zero() or b.is_zero():
        raise InvalidInput("a and b must be nonzero")
    if not (a.is_algebraic_integer() and b.is_algebraic_integer()):
        raise InvalidInput("a and b must be algebraic integers")
    if not generates_unit_ideal(a, b):
        raise InvalidInput(f"the ideal ({a}, {b}) is not the whole ring of integers")
    ratio = a / b
    if ratio == -1:
        raise UnsupportedBranch("a/b = -1 is excluded")
    if ratio == 1:
        raise InvalidInput("a/b = 1 gives a rational root")
    if ratio.is_rational():
        if ratio.as_rational() <= 1:
            raise UnsupportedBranch("a rational a/b must exceed 1")
    elif ratio.abs2() != 1:
        raise UnsupportedBranch("a/b must be a rational > 1 or lie on the unit circle")
    d = rational_content_divisor(a - b)
    calN = cal_N(d, n)
    C, D, label = resolve_certificate(cert, n, d)
    inputs = {"a": str(a), "b": str(b), "n": str(n), "K": str(K), "cert": label}
    with working_precision(prec + EXTRA_BITS):
        av, bv = a.to_mpc(), b.to_mpc()
        sa, sb = mpmath.sqrt(av), mpmath.sqrt(bv)
        lo, hi = sorted((abs(sa - sb), abs(sa + sb)))
        Nv, Dv, Cv = calN.value(), mpmath.exp(D.log()), mpf_of(C)
        E = Nv / Dv / lo ** 2
        Q = Dv / Nv * hi ** 2
        abs_a = abs(av)
        spread = abs(av * (av - bv) / bv)
        k0 = 2 * abs_a * Cv
        l0 = mpmath.mpf("1.25") * spread * Cv
        _check_threshold(l0)
        theta = principal_root(av / bv, n)

        def c_of(E_, Q_, kappa):
            return 4 * abs_a * Cv * Q_ * (mpmath.mpf("2.5") * spread * Cv * E_) ** kappa

        details = {"d": d, "calN": str(calN), "k0": k0, "l0": l0, "q_threshold": 1 / (2 * l0)}
        return _finish("Cor1", inputs, E, Q, c_of, prec, theta=theta, field=K, details=details)


def corollary1_setup(a, b, n: int) -> tuple[ThueSetup, Surd]:
    """The form and g whose root A(b) equals (b - a)(b/a)^((n-1)/n) / ((b/a)^((n-1)/n) - 1).

    beta1 = 0, beta2 = b - a, gamma1 = 1, gamma2 = -(b/a)^(n-1), x = b, g = b^(n-1);
    then U(b)/g = a and Z(b)/g = b.
    """
    a, b = qe(a), qe(b)
    K = _cor1_field(a, b)
    setup = ThueSetup(qe(0, K), b - a, qe(1, K), -(b / a) ** (n - 1), n, b, base=K)
    return setup, Surd(b ** (n - 1))


# ---------------------------------------------------------------------------
# the quadratic-beta pipeline, K = Q


@dataclass(frozen=True)
class Cor2GData:
    u1: int
    u2: int
    g1: int
    g2: int
    g3: int
    g4: int
    g: Surd
    d: int

    def as_tuple(self) -> tuple:
        gv = self.g.coeff.as_rational() if self.g.k == 1 and self.g.coeff.is_rational() else self.g
        if isinstance(gv, Fraction) and gv.denominator == 1:
            gv = int(gv)
        return (self.g1, self.g2, self.g3, self.g4, gv, self.d)

    def h_rule(self) -> tuple[Surd, Surd]:
        """h_r = 1 for even r and sqrt(core(g2 g3 g4)) for odd r."""
        return Surd(qe(1)), Surd(qe(1), core(self.g2 * self.g3 * self.g4))


def corollary2_gdata(u1: int, u2: int, t: int, n: int) -> Cor2GData:
    """g1..g4, g and d from U(x) = (u1 + u2 sqrt(t))/2."""
    if u1 == 0 and u2 == 0:
        raise InvalidInput("(u1, u2) must be nonzero")
    if t == 0 or not is_squarefree(abs(t)):
        raise InvalidInput("t must be a nonzero squarefree integer")
    g1 = math.gcd(u1, u2)
    g2 = math.gcd(u1 // g1, t)
    even = ((u1 - u2) // g1) % 2 == 0
    if t % 4 == 1 and even:
        g3 = 1
    elif t % 4 == 3 and even:
        g3 = 2
    else:
        g3 = 4
    e2n = math.gcd(2, n) * n
    g4 = math.gcd(core(g2 * g3), e2n // math.gcd(u1 // g1, e2n))
    # g = g1 sqrt(g2) / sqrt(g3 g4) = g1 sqrt(g2 g3 g4) / (g3 g4)
    rad = g2 * g3 * g4
    k = core(rad)
    s = math.isqrt(rad // k)
    g = Surd(qe(Fraction(g1 * s, g3 * g4)), k)
    if u1 == 0:
        raise Undefined("u1 = 0: no largest d exists")
    # u1/(d g) is integral iff d^2 divides u1^2 g3 g4 / (g1^2 g2), an integer
    M = Fraction(u1 * u1 * g3 * g4, g1 * g1 * g2)
    if M.denominator != 1:
        raise ConstructionBug("u1^2 g3 g4/(g1^2 g2) is not an integer")
    d = 1
    for p, e in factorint(abs(int(M))).items():
        d *= p ** (e // 2)
    return Cor2GData(u1, u2, g1, g2, g3, g4, g, d)


def corollary2_setup(n: int, t: int, x: int, beta1, gamma1) -> ThueSetup:
    """The form with beta2, gamma2 the conjugates of beta1, gamma1 in Q(sqrt t), K = Q."""
    if t == 0 or t == 1 or not is_squarefree(abs(t)):
        raise InvalidInput("t must be squarefree and different from 0 and 1")
    F = Field(t)
    beta1 = F.element(*beta1) if isinstance(beta1, tuple) else qe(beta1, F)
    gamma1 = F.element(*gamma1) if isinstance(gamma1, tuple) else qe(gamma1, F)
    for name, v in (("beta1", beta1), ("gamma1", gamma1)):
        if not v.is_rational() and v.field != F:
            raise InvalidInput(f"{name} must lie in Q(sqrt({t}))")
        if not v.is_algebraic_integer():
            raise InvalidInput(f"{name} must be an algebraic integer")
    if beta1.b == 0:
        raise InvalidInput("beta1 must be irrational (b != 0)")
    if gamma1.is_zero():
        raise InvalidInput("gamma1 must be nonzero")
    if not isinstance(x, int):
        raise InvalidInput("x must be a rational integer")
    return ThueSetup(beta1, beta1.conjugate(), gamma1, qe(gamma1, F).conjugate(), n, qe(x), base=QQ)


def corollary2(n: int, t: int, x: int, beta1, gamma1, cert="table1", prec: int = DEFAULT_PREC) -> MeasureResult:
    """Measure for A(x) with beta1 = a + b sqrt(t); the g_i data are computed automatically."""
    if not isinstance(n, int) or n < 3:
        raise InvalidInput("n must be an integer >= 3")
    setup = corollary2_setup(n, t, x, beta1, gamma1)
    xe = setup.x
    U, Z = setup.U(xe), setup.Z(xe)
    if U.is_zero():
        raise DegeneratePoint("U(x) = 0")
    W = Z / U
    region = _w_region(W)
    u1, u2 = 2 * U.a, 2 * U.b
    if u1.denominator != 1 or u2.denominator != 1:
        raise ConstructionBug("2 U(x) does not have integral coordinates")
    gd = corollary2_gdata(int(u1), int(u2), t, n)
    for name, v in (("U", U), ("Z", Z)):
        if not (v * v / gd.g.square()).is_algebraic_integer():
            raise ConstructionBug(f"{name}(x)/g is not an algebraic integer")
    C, D, label = resolve_certificate(cert, n, gd.d)
    calN = cal_N(gd.d, n)
    inputs = {"n": str(n), "t": str(t), "x": str(x), "beta1": str(setup.beta1), "gamma1": str(setup.gamma1),
              "cert": label}
    with working_precision(prec + EXTRA_BITS):
        st = mpmath.sqrt(mpmath.mpc(t))
        inner = mpmath.sqrt(mpmath.mpc(gd.u2 * gd.u2 * t - gd.u1 * gd.u1))
        pair = (gd.u2 * st + inner, gd.u2 * st - inner)
        su, sz = mpmath.sqrt(U.to_mpc()), mpmath.sqrt(Z.to_mpc())
        direct = ((su + sz) ** 2, (su - sz) ** 2)
        _check_same_pair(pair, direct, prec)
        lo, hi = sorted(abs(p) for p in pair)
        g_abs = abs(gd.g.to_mpc())
        Nv, Dv, Cv = calN.value(), mpmath.exp(D.log()), mpf_of(C)
        E = g_abs * Nv / (Dv * lo)
        Q = Dv * hi / (g_abs * Nv)
        h = mpmath.sqrt(abs(2 * t))
        A = script_A(setup, xe, prec + EXTRA_BITS)
        xv, b1, b2 = xe.to_mpc(), setup.beta1.to_mpc(), setup.beta2.to_mpc()
        wn = principal_root(W.to_mpc(), n)
        dist_sum = abs(xv - b1) + abs(xv - b2)
        tail = h * abs(1 - wn) * abs(xv - b2) * abs(A - b1)
        k0 = 2 * h * dist_sum * Cv
        l0 = max(mpmath.mpf(0.5), mpmath.mpf("2.4") * tail * Cv)
        _check_threshold(l0)

        def c_of(E_, Q_, kappa):
            return 4 * h * dist_sum * Cv * Q_ * max(mpmath.mpf(1), 5 * tail * Cv * E_) ** kappa

        details = {"u1": gd.u1, "u2": gd.u2, "g1": gd.g1, "g2": gd.g2, "g3": gd.g3, "g4": gd.g4,
                   "g": str(gd.g), "d": gd.d, "calN": str(calN), "W_region": region,
                   "k0": k0, "l0": l0, "A": A, "q_threshold": 1 / (2 * l0)}
        return _finish_with_lemma("Cor2", inputs, E, Q, c_of, k0, l0, prec, theta=A, field=QQ,
                                  details=details)


def _check_same_pair(p1, p2, prec: int) -> None:
    scale = max(abs(z) for z in p1 + p2) or mpmath.mpf(1)
    tol = guard(prec) * scale
    same = abs(p1[0] - p2[0]) < tol and abs(p1[1] - p2[1]) < tol
    swapped = abs(p1[0] - p2[1]) < tol and abs(p1[1] - p2[0]) < tol
    if not (same or swapped):
        raise ConstructionBug("(sqrt U +- sqrt Z)^2 does not match u2 sqrt t +- sqrt(u2^2 t - u1^2)")


# ---------------------------------------------------------------------------
# the approximation sequence


@dataclass(frozen=True)
class ApproximationState:
    """One approximation q_r A(x) - p_r = s_r.

    ``s_r`` comes from the remainder integral and ``s_r_direct`` from
    q_r A(x) - p_r at raised precision; the two agree within the guard band.
    """

    r: int
    p_r: QuadraticElement
    q_r: QuadraticElement
    s_r: mpmath.mpc
    s_r_direct: mpmath.mpc
    t_r: str
    h_r: Surd


def _h_over_g_power(pp: _Prepared, r: int) -> QuadraticElement:
    """h_r / g^r as an element of K."""
    g, k = pp.g, pp.g.k
    if r % 2 == 0:
        return pp.h_even.coeff / (g.coeff ** r * Fraction(k) ** (r // 2))
    return pp.h_odd.coeff / (g.coeff ** r * Fraction(k) ** ((r - 1) // 2))


def build_sequence(setup: ThueSetup, g, h_rule=None, tau=None, cert="table1", r_max: int = 30,
                   h=None, prec: int = DEFAULT_PREC) -> list[ApproximationState]:
    """p_r, q_r in O_K and s_r for r = 0..r_max, with the integrality and size checks applied."""
    pp = _prepare(setup, g, h_rule, h, tau, cert)
    _w_region(pp.W)
    K = setup.base
    n, x = setup.n, pp.x
    t = setup.field.t
    states = []
    with working_precision(prec + EXTRA_BITS):
        v = _common_numbers(pp, prec)
        A, C = v["A"], v["C"]
        growth = v["D"] / v["N"] * (v["hi"] / abs(mpmath.sqrt(pp.g.to_mpc()))) ** 2
        decay = v["D"] / v["N"] * (v["lo"] / abs(mpmath.sqrt(pp.g.to_mpc()))) ** 2
        q_front = 2 * pp.h * v["dist_sum"] * C
        s_front = mpmath.mpf("2.4") * v["tail"] * C
        xv, b1, b2 = x.to_mpc(), setup.beta1.to_mpc(), setup.beta2.to_mpc()
        Wv = pp.W.to_mpc()
    gb = guard(prec)
    for r in range(r_max + 1):
        factor = _h_over_g_power(pp, r) * Fraction(big_D(1, n, r), big_N(1, n, r, pp.d))
        P, Qv = thue_pq_at(setup, r, x)
        p, q = P * factor, Qv * factor
        t_label, t_num = "1", mpmath.mpf(1)
        if pp.quadratic_beta and r % 2 == 0:
            st = setup.field.sqrt_t()
            p, q = p / st, q / st
            t_label = "1/sqrt(t)"
        for name, z in (("p", p), ("q", q)):
            if not z.in_field(K) or not z.is_algebraic_integer():
                raise ConstructionBug(f"{name}_{r} = {z} is not an algebraic integer of K")
        p, q = qe(p.a, K) if p.is_rational() else p, qe(q.a, K) if q.is_rational() else q
        h_r = pp.h_even if r % 2 == 0 else pp.h_odd
        with working_precision(prec + EXTRA_BITS):
            if t_label != "1":
                t_num = 1 / mpmath.sqrt(mpmath.mpc(t))
            R = remainder_R(1, n, r, Wv, prec + EXTRA_BITS)
            s_rem = -t_num * factor.to_mpc() * (xv - b2) * (A - b1) * pp.U.to_mpc() ** r * R
            size_q = abs(q.to_mpc())
        # q A - p cancels to |s_r|, so the direct route needs the bits of |q_r|/|s_r| on top
        extra = 0
        with working_precision(64):
            if size_q > 0 and s_rem != 0:
                extra = max(0, int(mpmath.log(size_q / abs(s_rem) + 1, 2)))
        work = prec + EXTRA_BITS + extra
        A_hi = script_A(setup, x, work)
        with working_precision(work):
            s_dir = q.to_mpc() * A_hi - p.to_mpc()
        with working_precision(prec + EXTRA_BITS):
            s_dir = +s_dir
            if abs(s_dir - s_rem) > gb * max(abs(s_rem), abs(s_dir)):
                raise ConstructionBug(f"s_{r}: remainder route {mpmath.nstr(s_rem, 10)} "
                                      f"differs from q A - p = {mpmath.nstr(s_dir, 10)}")
            if abs(q.to_mpc()) > q_front * growth ** r * (1 + gb):
                raise ConstructionBug(f"|q_{r}| exceeds its bound")
            if abs(s_rem) > s_front * decay ** r * (1 + gb):
                raise ConstructionBug(f"|s_{r}| exceeds its bound")
        states.append(ApproximationState(r, p, q, s_rem, s_dir, t_label, h_r))
    return states


def consecutive_distinct(states: list[ApproximationState]) -> list[bool]:
    """p_r q_{r+1} != p_{r+1} q_r for each consecutive pair."""
    return [a.p_r * b.q_r != b.p_r * a.q_r for a, b in zip(states, states[1:])]


def fit_rates(states: list[ApproximationState], r_lo: int, r_hi: int) -> tuple[float, float]:
    """Least-squares growth ratio of |q_r| and decay ratio of |s_r| over r_lo <= r <= r_hi."""
    chosen = [s for s in states if r_lo <= s.r <= r_hi]
    if len(chosen) < 2:
        raise InvalidInput("need at least two states in the fitting window")
    rs = [s.r for s in chosen]
    with working_precision(DEFAULT_PREC):
        lq = [float(mpmath.log(abs(s.q_r.to_mpc()))) for s in chosen]
        ls = [float(mpmath.log(abs(s.s_r))) for s in chosen]
    q_slope = statistics.linear_regression(rs, lq).slope
    s_slope = statistics.linear_regression(rs, ls).slope
    return math.exp(q_slope), math.exp(s_slope)
