"""Denominator certificates and the analytic bound checks.

The central inequality compares, for every r up to a limit and every d in a
chosen set,

    max(1, g1_r, g2_r) * D_{m,n,r} / N_{d,n,r}  <  C * (D_n / calN_{d,n})^r

where g1_r, g2_r are the two Gamma-ratio products.  The left side is an exact
rational; both sides are compared through interval logarithms so that a pass
is rigorous.  Undecided comparisons are retried at doubled precision.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import mpmath

from .errors import CaseMismatch, InvalidInput, NotApplicable, PrecisionInsufficient
from .exact import PrimePowerProduct, factorint
from .hypergeom import big_D, big_N, cal_N, check_params, gamma_ratios, mu_n, xstar_eval
from .numeric import DEFAULT_PREC, guard, iv_of, mpf_of, working_precision
from .thue import principal_root, remainder_R
from .tables import table_row


# ---------------------------------------------------------------------------
# the constant D_n


@dataclass(frozen=True)
class DConstant:
    """The growth constant D_n, held exactly in one of three shapes.

    ``log``: log D given as an exact rational (tabulated values);
    ``product``: D = n * mu_n as a prime power product;
    ``nlogn``: D = coeff * n * log n.
    """

    kind: str
    log_value: Fraction | None = None
    product: PrimePowerProduct | None = None
    n: int | None = None
    coeff: Fraction | None = None

    @classmethod
    def from_log(cls, value) -> "DConstant":
        return cls("log", log_value=Fraction(value))

    @classmethod
    def from_product(cls, product: PrimePowerProduct) -> "DConstant":
        return cls("product", product=product)

    @classmethod
    def n_log_n(cls, n: int, coeff) -> "DConstant":
        return cls("nlogn", n=n, coeff=Fraction(coeff))

    def log_interval(self):
        """Enclosure of log D at the current interval precision."""
        if self.kind == "log":
            return iv_of(self.log_value)
        if self.kind == "product":
            return self.product.log_interval()
        n = mpmath.iv.mpf(self.n)
        return mpmath.iv.log(iv_of(self.coeff) * n * mpmath.iv.log(n))

    def log(self) -> mpmath.mpf:
        if self.kind == "log":
            return mpf_of(self.log_value)
        if self.kind == "product":
            return self.product.log()
        return mpmath.log(mpf_of(self.coeff) * self.n * mpmath.log(self.n))

    def __str__(self) -> str:
        if self.kind == "log":
            return _fraction_text(self.log_value)
        if self.kind == "product":
            inner = "*".join(f"{p}^({e})" if e != 1 else str(p) for p, e in self.product.factors)
            return f"log({inner})"
        return f"log({_fraction_text(self.coeff)}*{self.n}*log({self.n}))"


def _fraction_text(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    # terminating decimals print as decimals, everything else as p/q
    d = x.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d == 1:
        s = f"{x.numerator / x.denominator!r}"
        if Fraction(s) == x:
            return s
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class DenominatorCertificate:
    n: int
    m: int
    C: Fraction
    D: DConstant
    r_checked: int
    d_set: tuple[int, ...]
    status: str
    failure: tuple[int, int] | None = None

    @property
    def verified(self) -> bool:
        return self.failure is None

    @property
    def logD(self) -> str:
        return str(self.D)

    def to_line(self) -> str:
        ds = ",".join(str(d) for d in self.d_set)
        return f"{self.n} {self.m} {_fraction_text(self.C)} {self.logD} {self.r_checked} {ds} {self.status}"

    @classmethod
    def from_line(cls, line: str) -> "DenominatorCertificate":
        parts = line.split()
        if len(parts) != 7:
            raise InvalidInput("certificate line needs 7 fields")
        n, m, C, logD, r_checked, ds, status = parts
        failure = None
        if status.startswith("FailedAt("):
            r, d = status[len("FailedAt("):-1].split(",")
            failure = (int(r), int(d))
        elif not status.startswith("VerifiedUpTo("):
            raise InvalidInput(f"unknown status {status!r}")
        return cls(int(n), int(m), Fraction(C), DConstant.from_log(Fraction(logD)), int(r_checked),
                   tuple(int(d) for d in ds.split(",")), status, failure)

    def to_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "C": _fraction_text(self.C), "logD": self.logD,
                "r_checked": self.r_checked, "d_set": list(self.d_set), "status": self.status}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "DenominatorCertificate":
        obj = json.loads(text)
        ds = ",".join(str(d) for d in obj["d_set"])
        return cls.from_line(f"{obj['n']} {obj['m']} {obj['C']} {obj['logD']} {obj['r_checked']} {ds} {obj['status']}")


def default_d_set(n: int) -> tuple[int, ...]:
    """{1} together with p^(v_p(n)+1) for each prime p dividing n."""
    return (1,) + tuple(p ** (e + 1) for p, e in sorted(factorint(n).items()))


def _lhs_log_interval(m: int, n: int, r: int, d: int):
    g1, g2 = gamma_ratios(m, n, r)
    lhs = max(Fraction(1), g1, g2) * Fraction(big_D(m, n, r), big_N(m, n, r, d))
    return mpmath.iv.log(mpmath.iv.mpf(lhs.numerator)) - mpmath.iv.log(mpmath.iv.mpf(lhs.denominator))


def _check_one(args) -> tuple[int, int, str]:
    """Returns (r, d, verdict) with verdict 'pass', 'fail' or 'undecided'."""
    m, n, r, d, C, D, prec = args
    while True:
        with working_precision(prec):
            lhs = _lhs_log_interval(m, n, r, d)
            rhs = mpmath.iv.log(iv_of(C)) + r * (D.log_interval() - cal_N(d, n).log_interval())
            if lhs.b < rhs.a:
                return r, d, "pass"
            if lhs.a >= rhs.b:
                return r, d, "fail"
        if prec >= 8 * DEFAULT_PREC * 4:
            return r, d, "undecided"
        prec *= 2


def verify_denominator_inequality(n: int, m: int, C, logD, d_set: Iterable[int] | None = None,
                                  r_max: int = 400, prec: int = 128, workers: int = 1) -> DenominatorCertificate:
    """Check the denominator inequality for all 0 <= r <= r_max and d in d_set."""
    check_params(m, n, 0)
    C = Fraction(C)
    D = logD if isinstance(logD, DConstant) else DConstant.from_log(Fraction(logD))
    if C < 1:
        raise InvalidInput("C must be at least 1")
    if r_max < 0:
        raise InvalidInput("r_max must be nonnegative")
    ds = tuple(sorted(set(d_set))) if d_set is not None else default_d_set(n)
    jobs = [(m, n, r, d, C, D, prec) for r in range(r_max + 1) for d in ds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_one, jobs, chunksize=16))
    else:
        results = [_check_one(j) for j in jobs]
    bad = [(r, d) for r, d, verdict in results if verdict != "pass"]
    if bad and dict(((r, d), v) for r, d, v in results)[min(bad)] == "undecided":
        raise PrecisionInsufficient(f"inequality undecidable at (r, d) = {min(bad)}")
    if bad:
        r, d = min(bad)
        return DenominatorCertificate(n, m, C, D, r - 1, ds, f"FailedAt({r},{d})", (r, d))
    return DenominatorCertificate(n, m, C, D, r_max, ds, f"VerifiedUpTo({r_max})")


def table_certificate(n: int, which: str = "table1", r_max: int = 400, m: int = 1, **kw) -> DenominatorCertificate:
    C, logD = table_row(n).constants(which)
    return verify_denominator_inequality(n, m, C, logD, r_max=r_max, **kw)


def table_constants(n: int, which: str = "table1") -> tuple[Fraction, DConstant]:
    """Tabulated (C, D) without running the verification."""
    C, logD = table_row(n).constants(which)
    return C, DConstant.from_log(logD)


def default_certificate(n: int, d: int, form: str = "nmu") -> tuple[Fraction, DConstant]:
    """(C, D) valid for every r when calN_{d,n} divides n: C = 1 and D = n*mu_n or 1.18 n log n."""
    if n < 3:
        raise InvalidInput("n must be at least 3")
    if not cal_N(d, n).divides(n):
        raise NotApplicable(f"calN_(d={d},n={n}) does not divide n")
    if form == "nmu":
        return Fraction(1), DConstant.from_product(mu_n(n) * n)
    if form == "nlogn":
        if n == 6:
            raise NotApplicable("the 1.18 n log n form excludes n = 6")
        return Fraction(1), DConstant.n_log_n(n, Fraction(118, 100))
    raise InvalidInput(f"unknown form {form!r}")


# ---------------------------------------------------------------------------
# analytic bounds for the remainder and for the polynomials


@dataclass(frozen=True)
class BoundCheck:
    lhs: mpmath.mpf
    rhs: mpmath.mpf
    passed: bool
    lhs_other: mpmath.mpf | None = None


def _gamma_up(m: int, n: int, r: int) -> mpmath.mpf:
    """n Gamma(r+1+m/n) / (m Gamma(m/n) r!) = prod_{i<=r} (1 + m/(in))."""
    return mpf_of(gamma_ratios(m, n, r)[1])


def _classify_pair(u, z, case: str, prec: int) -> None:
    g = guard(prec)
    if case == "a_real" or case == "a":
        real_pos = u.imag == 0 and z.imag == 0 and u.real > 0 and z.real > 0 and u != z
        if case == "a_real" and not real_pos:
            raise CaseMismatch("need distinct positive reals u, z")
        if case == "a" and not real_pos:
            if abs(abs(u) - abs(z)) > g * abs(u) or u == 0:
                raise CaseMismatch("need distinct positive reals or |u| = |z|")
        return
    if case == "a_circle":
        if u == 0 or abs(abs(u) - abs(z)) > g * abs(u) or abs(z / u + 1) <= g:
            raise CaseMismatch("need |u| = |z| != 0 and z/u != -1")
        return
    if case == "b_disk":
        if u == 0 or not abs(1 - z / u) < 1:
            raise CaseMismatch("need |1 - z/u| < 1")
        return
    if case == "b":
        if u == 0 or z == 0 or not max(abs(1 - z / u), abs(1 - u / z)) < 1:
            raise CaseMismatch("need max(|1 - z/u|, |1 - u/z|) < 1")
        return
    raise InvalidInput(f"unknown case {case!r}")


def remainder_bound_check(m: int, n: int, r: int, u, z, case: str, prec: int = DEFAULT_PREC) -> BoundCheck:
    """|u^r R_{m,n,r}(z/u)| against the stated bound for the chosen case."""
    check_params(m, n, r)
    with working_precision(prec):
        u, z = mpmath.mpc(u), mpmath.mpc(z)
        _classify_pair(u, z, case, prec)
        w = z / u
        lhs = abs(u ** r * remainder_R(m, n, r, w, prec))
        wmn = principal_root(w, n) ** m
        if case in ("a_real", "a_circle"):
            base = min(abs(mpmath.sqrt(u) - mpmath.sqrt(z)), abs(mpmath.sqrt(u) + mpmath.sqrt(z))) ** (2 * r)
            rhs = mpmath.mpf("2.38") * abs(1 - wmn) * _gamma_up(m, n, r) * base
        else:
            zu = abs(z - u)
            base = (zu ** 2 / (4 * (abs(u) - zu))) ** r
            rhs = abs(wmn - 1) * _gamma_up(m, n, r) * base
        passed = lhs <= rhs * (1 + guard(prec)) + guard(prec) * mpmath.ldexp(1, -prec // 4)
    return BoundCheck(lhs, rhs, bool(passed))


def poly_bound_check(m: int, n: int, r: int, u, z, case: str, prec: int = DEFAULT_PREC) -> BoundCheck:
    """|X*(z,u)| and |X*(u,z)| against the stated bound; case 'a' or 'b'."""
    check_params(m, n, r)
    with working_precision(prec):
        u, z = mpmath.mpc(u), mpmath.mpc(z)
        _classify_pair(u, z, case, prec)
        lz = abs(xstar_eval(m, n, r, z, u))
        lu = abs(xstar_eval(m, n, r, u, z))
        ratio = mpf_of(gamma_ratios(m, n, r)[0])
        if case == "a":
            su, sz = mpmath.sqrt(u), mpmath.sqrt(z)
            rhs = 2 * ratio * max(abs(su + sz), abs(su - sz)) ** (2 * r)
        else:
            rhs = 2 * ratio * (2 * (abs(u) + abs(z))) ** r
        passed = max(lz, lu) <= rhs * (1 + guard(prec))
    return BoundCheck(lz, rhs, bool(passed), lhs_other=lu)


# ---------------------------------------------------------------------------
# mu_n scan


@dataclass(frozen=True)
class MuScan:
    n_max: int
    violations_194: list[int]
    violations_118: list[int]
    exceptions_118_below_2310: list[int]

    @property
    def violations(self) -> list[int]:
        return sorted(set(self.violations_194) | set(self.violations_118))


def _spf_sieve(limit: int) -> list[int]:
    spf = list(range(limit + 1))
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == p:
            for k in range(p * p, limit + 1, p):
                if spf[k] == k:
                    spf[k] = p
    return spf


def _mu_below(n: int, primes: list[int], coeff: Fraction) -> bool:
    """Decide mu_n < coeff * log n, first in floats, then with intervals when close."""
    log_mu = sum(math.log(p) / (p - 1) for p in primes)
    rhs = math.log(float(coeff)) + math.log(math.log(n))
    if abs(log_mu - rhs) > 1e-9:
        return log_mu < rhs
    with working_precision(256):
        lm = sum((mpmath.iv.log(p) / (p - 1) for p in primes), mpmath.iv.mpf(0))
        rr = mpmath.iv.log(iv_of(coeff)) + mpmath.iv.log(mpmath.iv.log(n))
        if lm.b < rr.a:
            return True
        if lm.a >= rr.b:
            return False
    raise PrecisionInsufficient(f"cannot compare mu_{n} with {coeff} log {n}")


def mu_bound_scan(n_max: int = 100_000) -> MuScan:
    """Scan mu_n < 1.94 log n on [3, n_max] and mu_n < 1.18 log n on (420, n_max]."""
    if n_max < 3:
        raise InvalidInput("n_max must be at least 3")
    spf = _spf_sieve(max(n_max, 2310))
    v194, v118, exc = [], [], []
    for n in range(3, max(n_max, 2309) + 1):
        primes = []
        k = n
        while k > 1:
            p = spf[k]
            primes.append(p)
            while k % p == 0:
                k //= p
        if n <= n_max and not _mu_below(n, primes, Fraction(194, 100)):
            v194.append(n)
        below = _mu_below(n, primes, Fraction(118, 100))
        if not below:
            if n < 2310:
                exc.append(n)
            if 420 < n <= n_max:
                v118.append(n)
    return MuScan(n_max, v194, v118, exc)
