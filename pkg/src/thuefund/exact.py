"""Exact arithmetic substrate.

Rationals are :class:`fractions.Fraction`.  Quadratic field elements are
stored as ``a + b*sqrt(t)`` with rational coordinates; integrality is decided
from trace and norm, so the half-integer ring of ``t = 1 mod 4`` needs no
special storage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import mpmath
import sympy

from .errors import InvalidInput, Undefined, ValuationUndefined

Rational = Union[int, Fraction]


# ---------------------------------------------------------------------------
# integers and rationals


def as_fraction(x: Rational | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InvalidInput("booleans are not rationals")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise InvalidInput(f"not an exact rational: {x!r}")


@lru_cache(maxsize=4096)
def factorint(n: int) -> dict[int, int]:
    """Prime factorisation of ``|n|`` (cached)."""
    if n == 0:
        raise InvalidInput("cannot factor 0")
    return dict(sympy.factorint(abs(n)))


def prime_divisors(n: int) -> list[int]:
    return sorted(factorint(n))


def is_prime(p: int) -> bool:
    return p >= 2 and bool(sympy.isprime(p))


def v_p(x: Rational, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    if not is_prime(p):
        raise ValuationUndefined(f"{p} is not prime")
    x = as_fraction(x)
    if x == 0:
        raise ValuationUndefined("valuation of zero")

    def vint(k: int) -> int:
        k = abs(k)
        e = 0
        while k % p == 0:
            k //= p
            e += 1
        return e

    return vint(x.numerator) - vint(x.denominator)


def core(n: int) -> int:
    """Squarefree part of ``n``: the squarefree ``n1`` with ``n/n1`` a square."""
    if n < 1:
        raise InvalidInput("core needs a positive integer")
    out = 1
    for p, e in factorint(n).items():
        if e % 2:
            out *= p
    return out


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factorint(n).values())


def lcm_many(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out


def gcd_many(values: Iterable[int]) -> int:
    out = 0
    for v in values:
        out = math.gcd(out, v)
    return out


# ---------------------------------------------------------------------------
# fields and quadratic elements


@dataclass(frozen=True)
class Field:
    """Either the rationals (``t is None``) or ``Q(sqrt t)`` for squarefree ``t``."""

    t: int | None = None

    def __post_init__(self) -> None:
        if self.t is None:
            return
        if not isinstance(self.t, int) or self.t in (0, 1) or not is_squarefree(self.t):
            raise InvalidInput(f"t must be a squarefree integer other than 0 and 1, got {self.t!r}")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def quadratic(cls, t: int) -> "Field":
        return cls(t)

    @property
    def kind(self) -> str:
        if self.t is None:
            return "Rationals"
        return "RealQuadratic" if self.t > 0 else "ImaginaryQuadratic"

    @property
    def is_rational(self) -> bool:
        return self.t is None

    @property
    def is_imaginary(self) -> bool:
        return self.t is not None and self.t < 0

    def __str__(self) -> str:
        return "Q" if self.t is None else f"Q(sqrt({self.t}))"

    def join(self, other: "Field") -> "Field":
        if self.t is None:
            return other
        if other.t is None or other.t == self.t:
            return self
        raise InvalidInput(f"cannot mix elements of {self} and {other}")

    def element(self, a: Rational, b: Rational = 0) -> "QuadraticElement":
        return QuadraticElement(self, as_fraction(a), as_fraction(b))

    def sqrt_t(self) -> "QuadraticElement":
        if self.t is None:
            raise InvalidInput("the rationals have no distinguished square root")
        return QuadraticElement(self, Fraction(0), Fraction(1))


QQ = Field.rationals()


class QuadraticElement:
    """Immutable element ``a + b*sqrt(t)`` of a field of degree at most two."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: Field, a: Rational = 0, b: Rational = 0):
        a = as_fraction(a)
        b = as_fraction(b)
        if field.t is None and b != 0:
            raise InvalidInput("rational element with irrational part")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticElement is immutable")

    # construction helpers
    @staticmethod
    def coerce(x: "QuadraticElement | Rational") -> "QuadraticElement":
        if isinstance(x, QuadraticElement):
            return x
        return QuadraticElement(QQ, as_fraction(x), Fraction(0))

    def _pair(self, other) -> tuple["QuadraticElement", Field]:
        other = QuadraticElement.coerce(other)
        return other, self.field.join(other.field)

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, (QuadraticElement, int, Fraction)):
            return NotImplemented
        o, f = self._pair(other)
        return QuadraticElement(f, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticElement(self.field, -self.a, -self.b)

    def __sub__(self, other):
        if not isinstance(other, (QuadraticElement, int, Fraction)):
            return NotImplemented
        return self + (-QuadraticElement.coerce(other))

    def __rsub__(self, other):
        return QuadraticElement.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (QuadraticElement, int, Fraction)):
            return NotImplemented
        o, f = self._pair(other)
        if f.t is None or (self.b == 0 and o.b == 0):
            return QuadraticElement(f, self.a * o.a, 0)
        t = f.t
        return QuadraticElement(f, self.a * o.a + t * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.b == 0:
            return QuadraticElement(self.field, 1 / self.a, 0)
        nrm = self.norm()
        return QuadraticElement(self.field, self.a / nrm, -self.b / nrm)

    def __truediv__(self, other):
        if not isinstance(other, (QuadraticElement, int, Fraction)):
            return NotImplemented
        o = QuadraticElement.coerce(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return QuadraticElement.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadraticElement(self.field, 1, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison and hashing
    def __eq__(self, other):
        if not isinstance(other, (QuadraticElement, int, Fraction)):
            return NotImplemented
        o = QuadraticElement.coerce(other)
        return self.a == o.a and self.b == o.b and (self.b == 0 or self.field == o.field)

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.field.t))

    def __repr__(self):
        if self.b == 0:
            return f"QE({self.a})"
        return f"QE({self.a} + {self.b}*sqrt({self.field.t}))"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt({self.field.t})"

    # structure
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> "QuadraticElement":
        return QuadraticElement(self.field, self.a, -self.b)

    def norm(self) -> Fraction:
        t = self.field.t or 0
        return self.a * self.a - t * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def is_algebraic_integer(self) -> bool:
        tr, nm = self.trace(), self.norm()
        if self.b == 0:
            return self.a.denominator == 1
        return tr.denominator == 1 and nm.denominator == 1

    def in_field(self, field: Field) -> bool:
        """True when the element lies in ``field`` (rationals lie in every field)."""
        return self.b == 0 or field.t == self.field.t

    def as_rational(self) -> Fraction:
        if self.b != 0:
            raise InvalidInput(f"{self} is not rational")
        return self.a

    def sign(self) -> int:
        """Exact sign of a real element (rational, or in a real quadratic field)."""
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.field.t < 0:
            raise InvalidInput("sign of a non-real element")
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sa == 0:
            return sb
        if sb == 0:
            return sa
        # opposite signs: compare a^2 with t b^2
        diff = self.a * self.a - self.field.t * self.b * self.b
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def is_real(self) -> bool:
        return self.b == 0 or self.field.t > 0

    def abs2(self) -> Fraction:
        """Exact squared absolute value; defined for rationals and imaginary fields."""
        if self.b == 0:
            return self.a * self.a
        if self.field.t > 0:
            raise InvalidInput("abs2 of an irrational real element is not rational")
        return self.norm()

    # numeric view
    def to_mpc(self) -> mpmath.mpc:
        """Complex value at the current mpmath working precision."""
        a = mpmath.mpf(self.a.numerator) / self.a.denominator
        if self.b == 0:
            return mpmath.mpc(a, 0)
        b = mpmath.mpf(self.b.numerator) / self.b.denominator
        t = self.field.t
        if t > 0:
            return mpmath.mpc(a + b * mpmath.sqrt(t), 0)
        return mpmath.mpc(a, b * mpmath.sqrt(-t))


def qe(x: "QuadraticElement | Rational", field: Field | None = None) -> QuadraticElement:
    """Coerce ``x`` to a quadratic element, optionally tagging it with ``field``."""
    x = QuadraticElement.coerce(x)
    if field is not None and x.b == 0 and x.field != field:
        return QuadraticElement(field, x.a, 0)
    return x


def rational_content_divisor(x: QuadraticElement | Rational) -> int:
    """Largest positive integer ``d`` with ``x/d`` still an algebraic integer."""
    x = qe(x)
    if x.is_zero():
        raise Undefined("content of zero")
    if not x.is_algebraic_integer():
        raise InvalidInput(f"{x} is not an algebraic integer")
    if x.b == 0:
        return abs(x.a.numerator)
    t = x.field.t
    if t % 4 != 1:
        return math.gcd(x.a.numerator, x.b.numerator)
    big_a, big_b = int(2 * x.a), int(2 * x.b)
    g = math.gcd(big_a, big_b)
    if (big_a // g - big_b // g) % 2:
        return g // 2
    return g


def generates_unit_ideal(a: QuadraticElement | Rational, b: QuadraticElement | Rational) -> bool:
    """Whether the integral elements ``a`` and ``b`` generate the whole ring of integers.

    The ideal ``(a, b)`` is the lattice spanned by ``a, a*w, b, b*w`` where ``w``
    generates the ring of integers over Z.  Its index in the ring is the gcd of
    the 2x2 minors of the coordinate matrix; the ideal is the unit ideal exactly
    when that index is 1.
    """
    a, b = qe(a), qe(b)
    if not (a.is_algebraic_integer() and b.is_algebraic_integer()):
        raise InvalidInput("coprimality is only defined for algebraic integers")
    field = a.field.join(b.field)
    if field.t is None:
        return math.gcd(int(a.a), int(b.a)) == 1
    t = field.t
    omega = field.element(Fraction(1, 2), Fraction(1, 2)) if t % 4 == 1 else field.sqrt_t()

    def coords(z: QuadraticElement) -> tuple[int, int]:
        # z = u + v*omega
        if t % 4 == 1:
            v = 2 * z.b
            u = z.a - v / 2
        else:
            v = z.b
            u = z.a
        if u.denominator != 1 or v.denominator != 1:
            raise InvalidInput(f"{z} is not integral")  # pragma: no cover
        return int(u), int(v)

    vecs = [coords(qe(z, field)) for z in (a, a * omega, b, b * omega)]
    minors = [vecs[i][0] * vecs[j][1] - vecs[i][1] * vecs[j][0]
              for i in range(4) for j in range(i + 1, 4)]
    return gcd_many(minors) == 1


# ---------------------------------------------------------------------------
# polynomials


class QuadPolynomial:
    """Immutable polynomial with quadratic-element coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[QuadraticElement | Rational] = ()):
        cs = [qe(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("QuadPolynomial is immutable")

    @classmethod
    def constant(cls, c) -> "QuadPolynomial":
        return cls([c])

    @classmethod
    def x(cls) -> "QuadPolynomial":
        return cls([0, 1])

    @classmethod
    def linear_power(cls, root, k: int) -> "QuadPolynomial":
        """``(x - root)**k``."""
        return cls([-qe(root), 1]) ** k

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> QuadraticElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else qe(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadraticElement)):
            other = QuadPolynomial([other])
        if not isinstance(other, QuadPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"QuadPolynomial({list(self.coeffs)!r})"

    @staticmethod
    def _lift(other) -> "QuadPolynomial":
        if isinstance(other, QuadPolynomial):
            return other
        return QuadPolynomial([other])

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return QuadPolynomial([self.coefficient(i) + o.coefficient(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return QuadPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, QuadPolynomial):
            c = qe(other)
            return QuadPolynomial([c * x for x in self.coeffs])
        if self.is_zero() or other.is_zero():
            return QuadPolynomial()
        out = [qe(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] = out[i + j] + x * y
        return QuadPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InvalidInput("negative polynomial power")
        result = QuadPolynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self, order: int = 1) -> "QuadPolynomial":
        p = self
        for _ in range(order):
            p = QuadPolynomial([c * i for i, c in enumerate(p.coeffs)][1:])
        return p

    def __call__(self, x):
        """Horner evaluation at an exact element, a polynomial, or an mpmath number."""
        if isinstance(x, QuadPolynomial):
            acc = QuadPolynomial()
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        if isinstance(x, (mpmath.mpf, mpmath.mpc, float, complex)):
            acc = mpmath.mpc(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c.to_mpc()
            return acc
        x = qe(x)
        acc = qe(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    compose = __call__

    def divmod(self, divisor: "QuadPolynomial") -> tuple["QuadPolynomial", "QuadPolynomial"]:
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = divisor.degree
        lead_inv = divisor.coeffs[-1].inverse()
        quot = [qe(0)] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1 - dd, -1, -1):
            c = rem[k + dd] * lead_inv
            quot[k] = c
            if c.is_zero():
                continue
            for j, y in enumerate(divisor.coeffs):
                rem[k + j] = rem[k + j] - c * y
        return QuadPolynomial(quot), QuadPolynomial(rem[:dd] if dd > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def multiplicity_at(self, root, limit: int | None = None) -> int:
        """Exact order of vanishing at ``root`` (``root`` must lie in the coefficient field)."""
        if self.is_zero():
            raise Undefined("the zero polynomial vanishes to infinite order")
        lin = QuadPolynomial([-qe(root), 1])
        p, k = self, 0
        while limit is None or k < limit:
            q, r = p.divmod(lin)
            if not r.is_zero():
                break
            p, k = q, k + 1
        return k

    def rational_coefficients(self) -> list[Fraction]:
        return [c.as_rational() for c in self.coeffs]


# ---------------------------------------------------------------------------
# prime power products


class PrimePowerProduct:
    """Immutable product ``prod p**e`` with rational exponents."""

    __slots__ = ("factors",)

    def __init__(self, factors: dict[int, Rational] | Iterable[tuple[int, Rational]] = ()):
        items = factors.items() if isinstance(factors, dict) else factors
        merged: dict[int, Fraction] = {}
        for p, e in items:
            if not is_prime(p):
                raise InvalidInput(f"{p} is not prime")
            merged[p] = merged.get(p, Fraction(0)) + as_fraction(e)
        object.__setattr__(
            self, "factors", tuple(sorted((p, e) for p, e in merged.items() if e != 0)))

    def __setattr__(self, name, value):
        raise AttributeError("PrimePowerProduct is immutable")

    @classmethod
    def from_rational(cls, x: Rational) -> "PrimePowerProduct":
        x = as_fraction(x)
        if x <= 0:
            raise InvalidInput("prime power products are positive")
        out = dict(factorint(x.numerator)) if x.numerator != 1 else {}
        if x.denominator != 1:
            for p, e in factorint(x.denominator).items():
                out[p] = out.get(p, 0) - e
        return cls(out)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.factors)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PrimePowerProduct.from_rational(other)
        if not isinstance(other, PrimePowerProduct):
            return NotImplemented
        return self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        inner = ", ".join(f"{p}: {e}" for p, e in self.factors)
        return "PrimePowerProduct({" + inner + "})"

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join(str(p) if e == 1 else f"{p}^({e})" for p, e in self.factors)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PrimePowerProduct.from_rational(other)
        return PrimePowerProduct(list(self.factors) + list(other.factors))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PrimePowerProduct.from_rational(other)
        return PrimePowerProduct(list(self.factors) + [(p, -e) for p, e in other.factors])

    def __pow__(self, k: Rational):
        k = as_fraction(k)
        return PrimePowerProduct([(p, e * k) for p, e in self.factors])

    def is_integer(self) -> bool:
        return all(e.denominator == 1 and e > 0 for _, e in self.factors)

    def is_rational(self) -> bool:
        return all(e.denominator == 1 for _, e in self.factors)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise InvalidInput(f"{self} is irrational")
        out = Fraction(1)
        for p, e in self.factors:
            out *= Fraction(p) ** int(e)
        return out

    def divides(self, n: int) -> bool:
        """Whether this product is an integer dividing ``n``."""
        if not self.is_integer():
            return False
        return n % int(self.as_rational()) == 0

    def log_interval(self) -> mpmath.ctx_iv.ivmpf:
        """Enclosure of ``log(value)`` at the current interval precision."""
        acc = mpmath.iv.mpf(0)
        for p, e in self.factors:
            acc += mpmath.iv.log(p) * mpmath.iv.mpf(e.numerator) / e.denominator
        return acc

    def log(self) -> mpmath.mpf:
        """``log(value)`` at the current mpmath precision (nearest rounding)."""
        acc = mpmath.mpf(0)
        for p, e in self.factors:
            acc += mpmath.log(p) * e.numerator / e.denominator
        return acc

    def value(self, rounding: str = "nearest") -> mpmath.mpf:
        """Numeric value; ``rounding`` is ``down``, ``up`` or ``nearest``."""
        if rounding == "nearest":
            return mpmath.exp(self.log())
        enc = mpmath.iv.exp(self.log_interval())
        return mpmath.mpf(enc.a if rounding == "down" else enc.b)
