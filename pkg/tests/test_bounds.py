from fractions import Fraction
import random

import mpmath
import pytest

from core.bounds import (
    ExactBound,
    Ordering,
    canonicalize,
    compare,
    compare_bounds,
    crude_tame_bound,
    decimal_digits,
    fontaine_bound,
    tame_prime_bound,
)
from core.errors import BoundError


def test_semistable_bound_squares_to_108() -> None:
    b = fontaine_bound(3, 1, {2})
    assert str(b) == "2 * 3^(3/2)"
    assert (b * b).as_fraction() == 108
    assert compare(b * b, 108) is Ordering.EQUAL


def test_semistable_bound_digits() -> None:
    assert decimal_digits(fontaine_bound(3, 1, {2}), 2) == "10.39"


def test_weight_one_bound_at_five_is_bracketed() -> None:
    b = fontaine_bound(5, 1)
    assert str(b) == "5^(5/4)"
    assert compare(b, "7.476") is Ordering.GREATER
    assert compare(b, "7.48") is Ordering.LESS


def test_weight_two_bounds() -> None:
    assert str(fontaine_bound(5, 2)) == "5^(3/2)"
    assert str(fontaine_bound(7, 2)) == "7^(4/3)"
    assert str(fontaine_bound(11, 2)) == "11^(6/5)"


def test_integral_powers_fold_into_the_scalar() -> None:
    b = ExactBound(Fraction(1), ((4, Fraction(3, 2)),))
    assert b == ExactBound.of(8)
    assert b.is_rational
    assert str(ExactBound.power(12, Fraction(1, 2))) == "2 * 3^(1/2)"


def test_parse_inverts_str() -> None:
    for b in (fontaine_bound(13, 1), fontaine_bound(5, 1, {2}), ExactBound.of(Fraction(7, 3))):
        assert ExactBound.parse(str(b)) == b


@pytest.mark.parametrize("text", ["", "2 *", "x^(1/2)", "3^(a)"])
def test_parse_rejects_malformed(text: str) -> None:
    with pytest.raises(BoundError):
        ExactBound.parse(text)


def test_compare_is_exact_at_equality() -> None:
    assert compare(ExactBound.power(2, Fraction(1, 2)) * ExactBound.power(2, Fraction(1, 2)), 2) is Ordering.EQUAL
    assert compare(ExactBound.power(2, Fraction(1, 2)), "1.41421356") is Ordering.GREATER
    assert compare(ExactBound.power(2, Fraction(1, 2)), "1.41421357") is Ordering.LESS


def test_compare_bounds_orders_weights() -> None:
    assert compare_bounds(fontaine_bound(5, 1), fontaine_bound(5, 2)) is Ordering.LESS
    assert compare_bounds(fontaine_bound(5, 2), fontaine_bound(5, 1)) is Ordering.GREATER
    assert compare_bounds(fontaine_bound(7, 1), fontaine_bound(7, 1)) is Ordering.EQUAL


def test_interval_encloses_value() -> None:
    b = fontaine_bound(5, 1)
    lo, hi = b.interval(30)
    assert compare(b, lo) is Ordering.GREATER
    assert compare(b, hi) is Ordering.LESS


def test_decimal_digits_truncates() -> None:
    # 13^(13/12) = 16.098...
    assert decimal_digits(fontaine_bound(13, 1), 2) == "16.09"
    assert decimal_digits(ExactBound.of(Fraction(2, 3)), 3) == "0.666"
    assert decimal_digits(ExactBound.of(5), 2) == "5.00"


@pytest.mark.parametrize(
    "p, r, S",
    [(4, 1, ()), (5, 0, ()), (5, 5, ()), (5, 1, (5,)), (5, 1, (6,))],
)
def test_fontaine_bound_rejects(p: int, r: int, S: tuple) -> None:
    with pytest.raises(BoundError):
        fontaine_bound(p, r, S)


def test_tame_prime_contribution() -> None:
    assert str(tame_prime_bound(3, 2)) == "3^(1/2)"
    assert tame_prime_bound(5, 1) == ExactBound.of(1)
    assert crude_tame_bound([2, 3]) == ExactBound.of(6)
    with pytest.raises(BoundError):
        tame_prime_bound(4, 2)


def _random_bound(rng: random.Random) -> tuple:
    scalar = Fraction(rng.randint(1, 60), rng.randint(1, 12))
    factors = tuple(
        (rng.randint(2, 30), Fraction(rng.randint(-9, 9), rng.randint(1, 6)))
        for _ in range(rng.randint(0, 4))
    )
    return scalar, factors


def test_canonicalize_is_idempotent_and_keeps_the_value() -> None:
    rng = random.Random(7)
    with mpmath.workdps(30):
        for _ in range(300):
            scalar, factors = _random_bound(rng)
            b = ExactBound(scalar, factors)
            once = canonicalize(b)
            assert canonicalize(once) == once == b
            assert ExactBound.parse(str(once)) == once
            assert all(exponent.denominator > 1 for _, exponent in once.factors)
            assert [base for base, _ in once.factors] == sorted({base for base, _ in once.factors})
            raw = mpmath.mpf(scalar.numerator) / scalar.denominator
            for base, exponent in factors:
                raw *= mpmath.power(base, mpmath.mpf(exponent.numerator) / exponent.denominator)
            assert mpmath.almosteq(once.to_mpf(), raw, rel_eps=mpmath.mpf(10) ** -20)
