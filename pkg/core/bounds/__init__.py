"""
Bounds Module - 精确判别式上界
Exact arithmetic for root-discriminant upper bounds
"""

from .exact_bound import (
    ExactBound,
    Ordering,
    Rational,
    as_rational,
    canonicalize,
    compare,
    compare_bounds,
    decimal_digits,
)
from .fontaine import fontaine_bound, tame_prime_bound, crude_tame_bound

__all__ = [
    "ExactBound",
    "Ordering",
    "Rational",
    "as_rational",
    "canonicalize",
    "compare",
    "compare_bounds",
    "decimal_digits",
    "fontaine_bound",
    "tame_prime_bound",
    "crude_tame_bound",
]
