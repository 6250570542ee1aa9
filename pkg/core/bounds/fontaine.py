"""
Discriminant upper bounds for crystalline and tamely ramified extensions
"""

from fractions import Fraction
from math import prod
from typing import Iterable, Tuple

from sympy import isprime

from core.errors import BoundError
from .exact_bound import ExactBound


def _primes(S: Iterable[int]) -> Tuple[int, ...]:
    primes = tuple(sorted(set(int(q) for q in S)))
    for q in primes:
        if not isprime(q):
            raise BoundError(f"{q} in S is not prime")
    return primes


def fontaine_bound(p: int, r: int, S: Iterable[int] = ()) -> ExactBound:
    """
    Root-discriminant bound (∏_{q∈S} q)·p^{1+r/(p-1)}

    Valid for the fixed field of a representation crystalline at p with
    Hodge-Tate weights in [0, r], semi-stable at S and unramified elsewhere.

    Args:
        p: residue characteristic
        r: Hodge-Tate weight, 1 <= r <= p-1
        S: primes of semi-stable ramification, p excluded

    Returns:
        canonical ExactBound
    """
    if not isprime(p):
        raise BoundError(f"p = {p} is not prime")
    primes = _primes(S)
    if p in primes:
        raise BoundError(f"p = {p} must not lie in S = {set(primes)}")
    if not 1 <= r <= p - 1:
        raise BoundError(f"Hodge-Tate weight r = {r} outside [1, {p - 1}]")
    return ExactBound(Fraction(prod(primes)), ((p, 1 + Fraction(r, p - 1)),))


def tame_prime_bound(q: int, e: int) -> ExactBound:
    """Contribution q^{1-1/e} of a tamely ramified prime with ramification index e"""
    if not isprime(q):
        raise BoundError(f"q = {q} is not prime")
    if e < 1:
        raise BoundError(f"ramification index must be >= 1, got {e}")
    return ExactBound.power(q, 1 - Fraction(1, e))


def crude_tame_bound(primes: Iterable[int]) -> ExactBound:
    """Product of the tamely ramified primes; each contributes strictly less than itself"""
    return ExactBound.of(prod(_primes(primes)))
