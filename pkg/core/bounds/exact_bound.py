"""
Exact Bound - symbolic root-discriminant upper bounds
精确上界：c·∏ q^(s/t) 的符号表示与精确比较
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, Tuple, Union
import re

import mpmath
from sympy import factorint

from core.errors import BoundError

# Exact carrier for table decimals and exponents: always reduced, positive denominator.
Rational = Fraction
RationalLike = Union[int, str, Fraction]

_TERM = re.compile(r"^(?P<base>\d+)\^\((?P<exp>-?\d+(?:/\d+)?)\)$")
_SCALAR = re.compile(r"^\d+(?:/\d+)?$")


class Ordering(Enum):
    """Outcome of an exact comparison"""
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


def as_rational(value: RationalLike) -> Fraction:
    """Exact rational from an int, a Fraction or a decimal string such as '10.39'"""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as an exact rational")


def _canonical_parts(
    scalar: Fraction,
    factors: Iterable[Tuple[int, RationalLike]]
) -> Tuple[Fraction, Tuple[Tuple[int, Fraction], ...]]:
    """
    Reduce c·∏ b^e to the unique form: prime bases, integral powers folded
    into the scalar, remaining factors sorted by prime with non-integral exponent.
    """
    if scalar <= 0:
        raise BoundError(f"bound must be positive, got scalar {scalar}")

    exponents: Dict[int, Fraction] = {}

    def absorb(base: int, exponent: Fraction) -> None:
        if exponent == 0 or base == 1:
            return
        for prime, multiplicity in factorint(base).items():
            prime = int(prime)
            exponents[prime] = exponents.get(prime, Fraction(0)) + exponent * int(multiplicity)

    absorb(scalar.numerator, Fraction(1))
    absorb(scalar.denominator, Fraction(-1))
    for base, exponent in factors:
        base = int(base)
        if base < 2:
            raise BoundError(f"factor base must be an integer >= 2, got {base}")
        absorb(base, as_rational(exponent))

    folded = Fraction(1)
    kept = []
    for prime in sorted(exponents):
        exponent = exponents[prime]
        if exponent == 0:
            continue
        if exponent.denominator == 1:
            folded *= Fraction(prime) ** exponent.numerator
        else:
            kept.append((prime, exponent))
    return folded, tuple(kept)


@dataclass(frozen=True)
class ExactBound:
    """
    A positive real scalar · ∏ base^exponent kept in canonical form.

    Two bounds are equal iff their canonical forms coincide, so the default
    dataclass equality is value equality.
    """
    scalar: Fraction = Fraction(1)
    factors: Tuple[Tuple[int, Fraction], ...] = field(default=())

    def __post_init__(self):
        scalar, factors = _canonical_parts(as_rational(self.scalar), self.factors)
        object.__setattr__(self, "scalar", scalar)
        object.__setattr__(self, "factors", factors)

    @classmethod
    def of(cls, value: RationalLike) -> "ExactBound":
        """Bound equal to a positive rational"""
        return cls(as_rational(value))

    @classmethod
    def power(cls, base: int, exponent: RationalLike) -> "ExactBound":
        return cls(Fraction(1), ((base, as_rational(exponent)),))

    @classmethod
    def parse(cls, text: str) -> "ExactBound":
        """
        Read the canonical string form, e.g. '2 * 3^(3/2)', '5^(5/4)', '9'

        Args:
            text: terms joined by '*'; each a rational scalar or 'base^(exponent)'

        Returns:
            ExactBound
        """
        scalar = Fraction(1)
        factors = []
        terms = [term.strip() for term in text.split("*")]
        if not terms or any(not term for term in terms):
            raise BoundError(f"malformed bound {text!r}")
        for term in terms:
            match = _TERM.match(term)
            if match:
                factors.append((int(match.group("base")), Fraction(match.group("exp"))))
            elif _SCALAR.match(term):
                scalar *= Fraction(term)
            else:
                raise BoundError(f"malformed bound term {term!r} in {text!r}")
        return cls(scalar, tuple(factors))

    def __str__(self) -> str:
        parts = []
        if self.scalar != 1 or not self.factors:
            parts.append(str(self.scalar))
        for base, exponent in self.factors:
            parts.append(f"{base}^({exponent})")
        return " * ".join(parts)

    def __mul__(self, other: "ExactBound") -> "ExactBound":
        if not isinstance(other, ExactBound):
            other = ExactBound.of(other)
        return ExactBound(self.scalar * other.scalar, self.factors + other.factors)

    __rmul__ = __mul__

    def __truediv__(self, other: "ExactBound") -> "ExactBound":
        if not isinstance(other, ExactBound):
            other = ExactBound.of(other)
        inverse = tuple((base, -exponent) for base, exponent in other.factors)
        return ExactBound(self.scalar / other.scalar, self.factors + inverse)

    @property
    def is_rational(self) -> bool:
        return not self.factors

    def as_fraction(self) -> Fraction:
        """Exact value when every exponent is integral"""
        if self.factors:
            raise BoundError(f"{self} is not rational")
        return self.scalar

    def exponent_denominator(self) -> int:
        """Least t clearing every exponent denominator"""
        return lcm(1, *(exponent.denominator for _, exponent in self.factors))

    def prime_exponent(self, prime: int) -> Fraction:
        """Total exponent of a prime across scalar and factors"""
        total = Fraction(0)
        for base, exponent in self.factors:
            if base == prime:
                total += exponent
        value = self.scalar
        while value.numerator % prime == 0:
            value /= prime
            total += 1
        while value.denominator % prime == 0:
            value *= prime
            total -= 1
        return total

    def replace_prime(self, prime: int, exponent: RationalLike) -> "ExactBound":
        """Same bound with the total exponent of one prime reset"""
        delta = as_rational(exponent) - self.prime_exponent(prime)
        return self * ExactBound.power(prime, delta) if delta else self

    def to_mpf(self):
        """Floating value at the ambient mpmath precision (display and cross-checks only)"""
        value = mpmath.mpf(self.scalar.numerator) / self.scalar.denominator
        for base, exponent in self.factors:
            value *= mpmath.power(base, mpmath.mpf(exponent.numerator) / exponent.denominator)
        return value

    def interval(self, digits: int = 50) -> Tuple[Fraction, Fraction]:
        """
        Rational enclosure (lo, hi) of the value, relative width about 10^-digits

        Never used on a decision path; it backs the cross-check of compare.
        """
        with mpmath.workdps(digits + 20):
            approx = self.to_mpf()
            slack = approx * mpmath.power(10, -digits)
            lo = Fraction(mpmath.nstr(approx - slack, digits + 15))
            hi = Fraction(mpmath.nstr(approx + slack, digits + 15))
        return lo, hi


def canonicalize(b: ExactBound) -> ExactBound:
    return ExactBound(b.scalar, b.factors)


def compare(b: ExactBound, d: RationalLike) -> Ordering:
    """
    Exact ordering of a bound against a positive rational

    Both sides are raised to the least power t clearing the exponent
    denominators; the comparison is then between rationals.

    Args:
        b: the bound
        d: positive rational (int, Fraction or decimal string)

    Returns:
        Ordering of b relative to d
    """
    d = as_rational(d)
    if d <= 0:
        raise BoundError(f"compare needs a positive rational, got {d}")
    t = b.exponent_denominator()
    left = b.scalar ** t
    for base, exponent in b.factors:
        left *= Fraction(base) ** int(exponent * t)
    right = d ** t
    if left < right:
        return Ordering.LESS
    if left > right:
        return Ordering.GREATER
    return Ordering.EQUAL


def compare_bounds(a: ExactBound, b: ExactBound) -> Ordering:
    """Exact ordering of two bounds"""
    return compare(a / b, 1)


def decimal_digits(b: ExactBound, k: int) -> str:
    """
    k digits after the point, truncated toward zero. Display only.

    The floating estimate is corrected by exact bracketing, so the digits
    are right even when the estimate is off by one unit.
    """
    if k < 1:
        raise BoundError(f"need at least one digit, got {k}")
    scale = 10 ** k
    with mpmath.workdps(k + 30):
        estimate = int(mpmath.floor(b.to_mpf() * scale))
    units = max(estimate, 0)
    while units > 0 and compare(b, Fraction(units, scale)) is Ordering.LESS:
        units -= 1
    while compare(b, Fraction(units + 1, scale)) is not Ordering.LESS:
        units += 1
    return f"{units // scale}.{units % scale:0{k}d}"
