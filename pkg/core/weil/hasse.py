"""
Hasse interval and the Hermite-Minkowski degree threshold
"""

from dataclasses import dataclass, asdict
from math import isqrt
from typing import Dict

from sympy import isprime

from core.errors import WeilRangeError
from .polynomials import check_prime_power


@dataclass(frozen=True)
class HasseInterval:
    """Possible point counts q + 1 - a with a^2 <= 4q"""
    q: int
    min: int
    max: int

    def __contains__(self, count: int) -> bool:
        return self.min <= count <= self.max

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)

    def __str__(self) -> str:
        return f"[{self.min}, {self.max}]"


def hasse_interval(q: int) -> HasseInterval:
    """
    Exact interval q + 1 ± floor(2 sqrt(q))

    Args:
        q: prime power

    Returns:
        HasseInterval
    """
    check_prime_power(q)
    spread = isqrt(4 * q)
    return HasseInterval(q, q + 1 - spread, q + 1 + spread)


def hm_degree_threshold(n: int, d: int, p: int) -> int:
    """p^(2 d n^2): degree cap for extensions with bounded ramification at p"""
    if n < 1 or d < 1:
        raise WeilRangeError(f"n and d must be >= 1, got n={n}, d={d}")
    if not isprime(p):
        raise WeilRangeError(f"p = {p} is not prime")
    return p ** (2 * d * n * n)
