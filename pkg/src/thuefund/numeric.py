"""High-precision numeric layer on top of mpmath.

Values are plain ``mpmath.mpc``/``mpmath.mpf`` numbers computed inside a
:func:`working_precision` block; the precision travels with the call (every
numeric entry point takes ``prec``) and is recorded in results.  Threshold
comparisons use a relative guard band of ``2**(-prec/2)``.
"""

from __future__ import annotations

import contextlib
import math
from fractions import Fraction
from typing import Callable, Iterator, TypeVar

import mpmath
from mpmath.libmp import to_float

from .errors import PrecisionInsufficient

DEFAULT_PREC = 200
MAX_PREC = 3200

T = TypeVar("T")


@contextlib.contextmanager
def working_precision(prec: int) -> Iterator[None]:
    """Set both the float and the interval mpmath contexts to ``prec`` bits."""
    old_mp, old_iv = mpmath.mp.prec, mpmath.iv.prec
    mpmath.mp.prec = prec
    mpmath.iv.prec = prec
    try:
        yield
    finally:
        mpmath.mp.prec = old_mp
        mpmath.iv.prec = old_iv


def guard(prec: int) -> mpmath.mpf:
    """Relative guard band used for threshold decisions."""
    return mpmath.ldexp(1, -(prec // 2))


def mpf_of(x: int | Fraction) -> mpmath.mpf:
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


def iv_of(x: int | Fraction) -> mpmath.ctx_iv.ivmpf:
    x = Fraction(x)
    return mpmath.iv.mpf(x.numerator) / x.denominator


def decide_greater(x: mpmath.mpf, threshold: mpmath.mpf, prec: int) -> bool:
    """Decide ``x > threshold`` or raise if the two are within the guard band."""
    g = guard(prec) * max(abs(x), abs(threshold), mpmath.mpf(1))
    if x > threshold + g:
        return True
    if x < threshold - g:
        return False
    raise PrecisionInsufficient(f"cannot decide {mpmath.nstr(x, 20)} > {mpmath.nstr(threshold, 20)} at {prec} bits")


def round_down(x: mpmath.mpf, prec: int) -> mpmath.mpf:
    return x * (1 - guard(prec)) if x > 0 else x * (1 + guard(prec))


def round_up(x: mpmath.mpf, prec: int) -> mpmath.mpf:
    return x * (1 + guard(prec)) if x > 0 else x * (1 - guard(prec))


def directed_float(x: mpmath.mpf, direction: str) -> float | str:
    """Convert to a float rounded in ``direction`` ('u' or 'd'); huge values become strings."""
    f = to_float(mpmath.mpf(x)._mpf_, rnd=direction)
    if math.isfinite(f):
        return f
    return mpmath.nstr(x, 25)


def with_precision_retry(fn: Callable[[int], T], prec: int = DEFAULT_PREC, max_prec: int = MAX_PREC) -> T:
    """Call ``fn(prec)``, doubling the precision while it raises PrecisionInsufficient."""
    while True:
        try:
            return fn(prec)
        except PrecisionInsufficient:
            if prec * 2 > max_prec:
                raise
            prec *= 2
