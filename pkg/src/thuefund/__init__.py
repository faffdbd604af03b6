"""Effective irrationality measures from Thue's Fundamentaltheorem.

Exact hypergeometric polynomials, Thue's approximating polynomials, the
denominator-bound certificates and the measure pipelines built on them.
"""

from __future__ import annotations

__version__ = "0.1.0"
