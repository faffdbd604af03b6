"""Exhaustive check of an irrationality measure over small denominators.

For every nonzero q in the ring of integers of K with |q| <= q_max, the
closest p in that ring to q*theta is located (rounding in the lattice basis,
then a 3x3 neighbourhood) and

    |q theta - p| > 1 / (c |q|^kappa)

is tested in log form.  A float64 pass with a safety margin settles most q;
the remaining ones are recomputed with mpmath.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import InvalidInput
from .exact import QQ, Field
from .numeric import DEFAULT_PREC, working_precision

# float screen: the computed log distance must clear the bound by this much
SCREEN_MARGIN = 1e-6


@dataclass(frozen=True)
class BruteForceReport:
    passed: bool
    checked: int
    rechecked: int
    worst_margin: float
    worst_q: complex
    failures: tuple[complex, ...]

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "rechecked": self.rechecked,
                "worst_margin": self.worst_margin, "worst_q": _ctext(self.worst_q),
                "failures": [_ctext(q) for q in self.failures]}


def _ctext(z: complex) -> str:
    z = complex(z)
    return str(int(z.real)) if z.imag == 0 else f"{z.real:g}{z.imag:+g}j"


def _basis(field: Field) -> tuple[complex, float]:
    """omega with O_K = Z + Z*omega, and Im(omega); K = Q returns (0, 0)."""
    if field.t is None:
        return 0j, 0.0
    if field.t > 0:
        raise InvalidInput("only Q and imaginary quadratic fields have discrete integer rings")
    s = math.sqrt(-field.t)
    omega = complex(0.5, s / 2) if field.t % 4 == 1 else complex(0, s)
    return omega, omega.imag


def _denominators(field: Field, q_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Integer coordinates (u, v) and values of every nonzero q = u + v*omega with |q| <= q_max."""
    omega, im = _basis(field)
    if field.t is None:
        u = np.arange(1, q_max + 1, dtype=np.int64)
        return u, np.zeros_like(u), u.astype(np.complex128)
    vmax = int(q_max / im) + 1
    us, vs = [], []
    for v in range(-vmax, vmax + 1):
        # |u + v omega|^2 <= q_max^2 is a quadratic condition on u
        re, imv = v * omega.real, v * im
        rest = q_max * q_max - imv * imv
        if rest < 0:
            continue
        span = math.sqrt(rest)
        lo, hi = math.ceil(-span - re), math.floor(span - re)
        u = np.arange(lo, hi + 1, dtype=np.int64)
        us.append(u)
        vs.append(np.full_like(u, v))
    u, v = np.concatenate(us), np.concatenate(vs)
    q = u + v * omega
    keep = (np.abs(q) <= q_max) & ((u != 0) | (v != 0))
    return u[keep], v[keep], q[keep]


def _nearest(z: np.ndarray, field: Field) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """For each z the lattice coordinates (x, y) of the closest p and |z - p|."""
    omega, im = _basis(field)
    if field.t is None:
        x0 = np.rint(z.real)
        best = np.full(z.shape, np.inf)
        bx = x0.copy()
        for i in (-1, 0, 1):
            dist = np.abs(z - (x0 + i))
            better = dist < best
            best = np.where(better, dist, best)
            bx = np.where(better, x0 + i, bx)
        return bx, np.zeros_like(bx), best
    y = z.imag / im
    x = z.real - y * omega.real
    x0, y0 = np.rint(x), np.rint(y)
    best = np.full(z.shape, np.inf)
    bx, by = x0.copy(), y0.copy()
    for i in (-1, 0, 1):
        for j in (-1, 0, 1):
            p = (x0 + i) + (y0 + j) * omega
            dist = np.abs(z - p)
            better = dist < best
            best = np.where(better, dist, best)
            bx = np.where(better, x0 + i, bx)
            by = np.where(better, y0 + j, by)
    return bx, by, best


def brute_force_check(theta, c, kappa, field: Field = QQ, q_max: int = 1000, q_min: float = 1.0,
                      prec: int = DEFAULT_PREC) -> BruteForceReport:
    """Test |theta - p/q| > 1/(c |q|^(kappa+1)) for all integral q with q_min <= |q| <= q_max."""
    if q_max < 1:
        raise InvalidInput("q_max must be at least 1")
    with working_precision(prec):
        theta_mp = mpmath.mpc(theta)
        c_mp, kappa_mp = mpmath.mpf(c), mpmath.mpf(kappa)
        if c_mp <= 0 or kappa_mp <= 0:
            raise InvalidInput("c and kappa must be positive")
        log_c = float(mpmath.log(c_mp))
    kappa_f = float(kappa_mp)
    theta_f = complex(theta_mp)
    u, v, q = _denominators(field, q_max)
    absq = np.abs(q)
    sel = absq >= q_min - 1e-12
    u, v, q, absq = u[sel], v[sel], q[sel], absq[sel]
    _, _, dist = _nearest(q * theta_f, field)
    # float error of |q theta - p| is a few ulps of |q theta|
    err = 8 * np.finfo(float).eps * (absq * abs(theta_f) + 1)
    rhs = -log_c - kappa_f * np.log(absq)
    with np.errstate(divide="ignore"):
        lhs = np.log(np.maximum(dist - err, 0))
    margin = lhs - rhs
    settled = margin > SCREEN_MARGIN
    redo = np.nonzero(~settled)[0]
    failures = []
    margins = np.where(settled, margin, np.inf)
    omega, _ = _basis(field)
    if len(redo):
        with working_precision(prec):
            om = mpmath.mpc(omega)
            for idx in redo:
                qm = mpmath.mpf(int(u[idx])) + int(v[idx]) * om
                z = qm * theta_mp
                best = None
                # exact nearest p from the high-precision coordinates
                if field.t is None:
                    x0 = mpmath.nint(z.real)
                    cands = [x0 + i for i in (-1, 0, 1)]
                else:
                    y = z.imag / om.imag
                    x = z.real - y * om.real
                    x0, y0 = mpmath.nint(x), mpmath.nint(y)
                    cands = [(x0 + i) + (y0 + j) * om for i in (-1, 0, 1) for j in (-1, 0, 1)]
                for p in cands:
                    d = abs(z - p)
                    best = d if best is None or d < best else best
                bound = -mpmath.log(c_mp) - kappa_mp * mpmath.log(abs(qm))
                m = mpmath.log(best) - bound if best > 0 else mpmath.ninf
                margins[idx] = float(m)
                if not m > 0:
                    failures.append(complex(q[idx]))
    k = int(np.argmin(margins))
    return BruteForceReport(not failures, int(len(q)), int(len(redo)), float(margins[k]), complex(q[k]),
                            tuple(failures))


def validate_result(result, q_max: int = 1000, theta=None) -> BruteForceReport:
    """Brute-force check of an applicable MeasureResult (optionally against another theta)."""
    if not result.applicable:
        raise InvalidInput("only applicable measures can be validated")
    th = result.theta if theta is None else theta
    q_min = 1.0
    if "q_threshold" in result.details:
        q_min = max(1.0, float(result.details["q_threshold"]))
    return brute_force_check(th, result.c, result.kappa, result.field, q_max, q_min, result.precision_bits)
