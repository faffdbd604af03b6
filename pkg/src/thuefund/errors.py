"""Exception hierarchy shared by every module in the package."""

from __future__ import annotations


class ThueFundError(Exception):
    """Base class for all package errors."""


class InvalidInput(ThueFundError, ValueError):
    """An argument violates a documented precondition."""


class InvalidParameters(InvalidInput):
    """Integer parameters of a polynomial family are out of range."""


class ValuationUndefined(InvalidInput):
    """A p-adic valuation of zero, or with a non-prime base, was requested."""


class PrecisionInsufficient(ThueFundError, ArithmeticError):
    """A numeric comparison fell inside the guard band at the working precision."""


class NotApplicable(ThueFundError):
    """A measure pipeline ran but the resulting exponent base is not above one.

    The computed (non applicable) result is kept in ``result`` so callers can
    still report the diagnostic quantities.
    """

    def __init__(self, message: str, result: object | None = None):
        super().__init__(message)
        self.result = result


class UnsupportedBranch(ThueFundError):
    """The requested configuration is outside the supported branch of a formula."""


class ExcludedBranch(UnsupportedBranch):
    """A branch index explicitly excluded by the root description was requested."""


class NotARoot(InvalidInput):
    """A value claimed to be a root of the Thue form is not one."""


class DegenerateG(InvalidInput):
    """The divisor g is zero or does not divide the required quantities."""


class DegeneratePoint(InvalidInput):
    """The evaluation point makes a required polynomial vanish."""


class CaseMismatch(InvalidInput):
    """The inputs do not match the case selected by the caller."""


class SingularTransform(InvalidInput):
    """A Moebius transform with vanishing determinant was requested."""


class Unclassified(ThueFundError):
    """The inputs fall outside every case of the real-root classification."""


class ConstructionBug(ThueFundError, AssertionError):
    """An internal consistency check failed; this indicates a bug."""


class Undefined(ThueFundError, ArithmeticError):
    """A quantity is mathematically undefined for the given inputs."""
