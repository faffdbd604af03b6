"""Hypergeometric polynomials X_{m,n,r} and their denominator data.

``X_{m,n,r}(x)`` is the degree-r truncation ``2F1(-r, -r-m/n; 1-m/n; x)``.
Coefficients are built incrementally from the ratio of consecutive terms, so
constructing one polynomial costs O(r) rational multiplications.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import ConstructionBug, InvalidInput, InvalidParameters
from .exact import (
    PrimePowerProduct,
    QuadPolynomial,
    factorint,
    gcd_many,
    lcm_many,
    v_p,
)
from .numeric import mpf_of


def check_params(m: int, n: int, r: int) -> None:
    for name, v in (("m", m), ("n", n), ("r", r)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise InvalidParameters(f"{name} must be an integer")
    if not 0 < m < n:
        raise InvalidParameters(f"need 0 < m < n, got m={m}, n={n}")
    if math.gcd(m, n) != 1:
        raise InvalidParameters(f"need gcd(m, n) = 1, got gcd({m}, {n}) = {math.gcd(m, n)}")
    if r < 0:
        raise InvalidParameters(f"need r >= 0, got {r}")


@lru_cache(maxsize=2048)
def _coefficients(m: int, n: int, r: int) -> tuple[Fraction, ...]:
    out = [Fraction(1)]
    c = Fraction(1)
    for i in range(r):
        c = c * ((i - r) * (n * (i - r) - m)) / ((n * (i + 1) - m) * (i + 1))
        out.append(c)
    return tuple(out)


def _shifted_direct(m: int, n: int, r: int, d: int) -> list[Fraction]:
    """Coefficients of X_{m,n,r}(1-dx) from the closed summation formula.

    coefficient of x^i is
        (-1)^i C(2r-i, r) (r!/i!) n^(r-i) prod_{k=r-i+1}^{r} (kn+m) d^i / prod_{k=1}^{r} (kn-m)
    """
    denom = 1
    for k in range(1, r + 1):
        denom *= k * n - m
    out = []
    rising = 1  # prod_{k=r-i+1}^{r} (kn+m)
    fact_ratio = math.factorial(r)  # r!/i!
    for i in range(r + 1):
        if i > 0:
            rising *= (r - i + 1) * n + m
            fact_ratio //= i
        num = math.comb(2 * r - i, r) * fact_ratio * n ** (r - i) * rising * d ** i
        out.append(Fraction((-1) ** i * num, denom))
    return out


def _shifted_compose(m: int, n: int, r: int, d: int) -> list[Fraction]:
    """Coefficients of X_{m,n,r}(1-dx) by expanding sum c_j (1-dx)^j."""
    out = [Fraction(0)] * (r + 1)
    for j, c in enumerate(_coefficients(m, n, r)):
        for i in range(j + 1):
            out[i] += c * math.comb(j, i) * (-d) ** i
    return out


@dataclass(frozen=True)
class HypergeomPoly:
    """Exact X_{m,n,r} with its denominator D_{m,n,r}."""

    m: int
    n: int
    r: int
    coefficients: tuple[Fraction, ...]

    @property
    def D(self) -> int:
        return lcm_many(c.denominator for c in self.coefficients)

    def N(self, d: int) -> int:
        return big_N(self.m, self.n, self.r, d)

    def as_polynomial(self) -> QuadPolynomial:
        return QuadPolynomial(self.coefficients)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


@dataclass(frozen=True)
class DenominatorData:
    D: int
    N: int
    d: int


def xpoly(m: int, n: int, r: int) -> HypergeomPoly:
    check_params(m, n, r)
    return HypergeomPoly(m, n, r, _coefficients(m, n, r))


def xpoly_shifted(m: int, n: int, r: int, d: int) -> QuadPolynomial:
    """X_{m,n,r}(1-dx), built by composition and by the closed formula; both must agree."""
    check_params(m, n, r)
    if not isinstance(d, int) or d < 1:
        raise InvalidParameters(f"need an integer d >= 1, got {d!r}")
    direct = _shifted_direct(m, n, r, d)
    composed = _shifted_compose(m, n, r, d)
    if direct != composed:
        raise ConstructionBug(f"shifted coefficients disagree for (m,n,r,d)=({m},{n},{r},{d})")
    return QuadPolynomial(direct)


def xstar_eval(m: int, n: int, r: int, z, u):
    """Homogeneous form X*(z, u) = u^r X(z/u) = sum c_i z^i u^(r-i).

    Works for exact elements, polynomials and mpmath numbers; ``u = 0`` is
    handled by the homogeneous expansion, never by division.
    """
    coeffs: tuple = xpoly(m, n, r).coefficients
    if any(isinstance(v, (mpmath.mpf, mpmath.mpc, float, complex)) for v in (z, u)):
        coeffs = tuple(mpf_of(c) for c in coeffs)
    acc = coeffs[r] * u ** 0  # keeps the result in the type of the inputs
    upow = None
    for i in range(r - 1, -1, -1):
        upow = u if upow is None else upow * u
        acc = acc * z + upow * coeffs[i]
    return acc


def big_D(m: int, n: int, r: int) -> int:
    return xpoly(m, n, r).D


def big_N(m: int, n: int, r: int, d: int) -> int:
    """gcd of the numerators (in lowest terms) of the coefficients of X_{m,n,r}(1-dx).

    The integer content of D*X(1-dx) is always a multiple of this gcd and can be
    strictly larger (for (m,n,r,d) = (1,3,6,11) it is 11 while the gcd is 1), so
    only the divisibility is asserted.
    """
    check_params(m, n, r)
    if not isinstance(d, int) or d < 1:
        raise InvalidParameters(f"need an integer d >= 1, got {d!r}")
    shifted = _shifted_direct(m, n, r, d)
    numer_gcd = gcd_many(c.numerator for c in shifted)
    content = shifted_content(m, n, r, d, shifted)
    if content % numer_gcd:
        raise ConstructionBug(f"numerator gcd {numer_gcd} does not divide content {content} for ({m},{n},{r},{d})")
    return numer_gcd


def shifted_content(m: int, n: int, r: int, d: int, shifted: list[Fraction] | None = None) -> int:
    """Integer content of D_{m,n,r} * X_{m,n,r}(1-dx)."""
    if shifted is None:
        check_params(m, n, r)
        shifted = _shifted_direct(m, n, r, d)
    D = big_D(m, n, r)
    scaled = [c * D for c in shifted]
    if any(c.denominator != 1 for c in scaled):
        raise ConstructionBug("D does not clear the shifted denominators")
    return gcd_many(int(c) for c in scaled)


def denominator_data(m: int, n: int, r: int, d: int) -> DenominatorData:
    return DenominatorData(big_D(m, n, r), big_N(m, n, r, d), d)


def split_d(d: int, n: int) -> tuple[int, int, int]:
    """Write d = d1*d2*d3 with d1 = gcd(d, n), d2 = gcd(d/d1, n)."""
    d1 = math.gcd(d, n)
    d2 = math.gcd(d // d1, n)
    return d1, d2, d // (d1 * d2)


def guaranteed_N_divisor(n: int, r: int, d: int) -> int:
    """The factor d1^r * prod_{p | d2} p^{v_p(r!)} known to divide N_{d,n,r}."""
    d1, d2, _ = split_d(d, n)
    out = d1 ** r
    if r > 0:
        rf = math.factorial(r)
        for p in factorint(d2) if d2 > 1 else ():
            out *= p ** v_p(rf, p)
    return out


def mu_n(n: int) -> PrimePowerProduct:
    """prod over primes p | n of p^(1/(p-1))."""
    if n < 2:
        raise InvalidInput("mu_n needs n >= 2")
    return PrimePowerProduct({p: Fraction(1, p - 1) for p in factorint(n)})


def cal_N(d: int, n: int) -> PrimePowerProduct:
    """prod over primes p | n of p^min(v_p(d), v_p(n) + 1/(p-1))."""
    if d < 1 or n < 2:
        raise InvalidInput("cal_N needs d >= 1 and n >= 2")
    out = {}
    for p, e in factorint(n).items():
        out[p] = min(Fraction(v_p(d, p)), e + Fraction(1, p - 1))
    return PrimePowerProduct(out)


def gamma_ratios(m: int, n: int, r: int) -> tuple[Fraction, Fraction]:
    """(prod_{i<=r} in/(in-m), prod_{i<=r} (1 + m/(in)))."""
    check_params(m, n, r)
    first = Fraction(1)
    second = Fraction(1)
    for i in range(1, r + 1):
        first *= Fraction(i * n, i * n - m)
        second *= Fraction(i * n + m, i * n)
    return first, second
