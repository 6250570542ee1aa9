"""
Weil polynomials: monic integer polynomials with every root of modulus q^(k/2)
Weil 多项式枚举（局部 L 因子的有限性）
"""

from dataclasses import dataclass, field
from itertools import product
from math import comb, isqrt, prod
from typing import Dict, Iterator, List, Optional, Sequence, Tuple
import logging

import numpy as np
import pandas as pd
from sympy import Poly, factor_list, factorint, symbols

from core.errors import WeilRangeError

logger = logging.getLogger(__name__)

x = symbols("x")

MAX_DEGREE = 6
BOX_CAP = 2_000_000
REFINE_STEPS = 64


def check_prime_power(q: int) -> Tuple[int, int]:
    """(prime, exponent) of a prime power, else WeilRangeError"""
    if q < 2:
        raise WeilRangeError(f"q = {q} is not a prime power")
    factors = factorint(q)
    if len(factors) != 1:
        raise WeilRangeError(f"q = {q} is not a prime power")
    return next(iter(factors.items()))


def _validate(q: int, k: int, n: int) -> int:
    check_prime_power(q)
    if k < 1:
        raise WeilRangeError(f"weight k must be >= 1, got {k}")
    if not 1 <= n <= MAX_DEGREE:
        raise WeilRangeError(f"degree n must lie in [1, {MAX_DEGREE}], got {n}")
    return q ** k


def _exact_half_power(big_q: int, n: int) -> Optional[int]:
    """Q^(n/2) when it is an integer"""
    if n % 2 == 0:
        return big_q ** (n // 2)
    root = isqrt(big_q)
    return root ** n if root * root == big_q else None


@dataclass(frozen=True, order=True)
class WeilPolynomial:
    """
    x^n + a_{n-1} x^{n-1} + ... + a_0 with all roots of modulus q^(k/2).

    coefficients holds a_0 .. a_{n-1}.
    """
    q: int
    k: int
    n: int
    coefficients: Tuple[int, ...]
    certified: bool = field(default=False, compare=False)

    @property
    def weight_modulus_squared(self) -> int:
        return self.q ** self.k

    @property
    def all_coefficients(self) -> List[int]:
        """a_0 .. a_n, with a_n = 1"""
        return list(self.coefficients) + [1]

    def as_poly(self) -> Poly:
        return Poly(list(reversed(self.all_coefficients)), x)

    @property
    def is_irreducible(self) -> bool:
        _, factors = factor_list(self.as_poly().as_expr())
        return len(factors) == 1 and factors[0][1] == 1

    def root_moduli(self) -> List[float]:
        """Floating-point moduli of the roots, for display"""
        roots = np.roots(list(reversed(self.all_coefficients)))
        return sorted(float(abs(r)) for r in roots)

    def trace_polynomial(self) -> Poly:
        """h with R(x) = x^d h(x + Q/x), R the factor without real roots"""
        remainder, _ = split_real_roots(self.as_poly(), self.weight_modulus_squared)
        return trace_polynomial(remainder, self.weight_modulus_squared)

    def __str__(self) -> str:
        return str(self.as_poly().as_expr())

    def to_dict(self) -> Dict[str, object]:
        return {
            "q": self.q,
            "k": self.k,
            "n": self.n,
            "coefficients": list(self.coefficients),
            "polynomial": str(self),
            "certified": self.certified,
        }


@dataclass
class WeilEnumeration:
    """Certified polynomials and the ones the procedure could not decide"""
    certified: List[WeilPolynomial] = field(default_factory=list)
    undecided: List[WeilPolynomial] = field(default_factory=list)

    def __iter__(self) -> Iterator[WeilPolynomial]:
        return iter(self.certified)

    def __len__(self) -> int:
        return len(self.certified)

    def __getitem__(self, index: int) -> WeilPolynomial:
        return self.certified[index]


def split_real_roots(poly: Poly, big_q: int) -> Tuple[Poly, int]:
    """
    Strip every factor whose roots are ±sqrt(Q)

    Returns:
        (remaining factor, number of stripped roots)
    """
    root = isqrt(big_q)
    if root * root == big_q:
        factors = [Poly(x - root, x), Poly(x + root, x)]
    else:
        factors = [Poly(x ** 2 - big_q, x)]
    stripped = 0
    for factor in factors:
        while poly.degree() >= factor.degree():
            quotient, remainder = poly.div(factor)
            if not remainder.is_zero:
                break
            poly = quotient
            stripped += factor.degree()
    return poly, stripped


def trace_polynomial(remainder: Poly, big_q: int) -> Optional[Poly]:
    """
    Monic h of degree d with x^d h(x + Q/x) = remainder, or None

    remainder must have even degree 2d and constant term Q^d.
    """
    degree = remainder.degree()
    if degree % 2:
        return None
    d = degree // 2
    coeffs = list(reversed(remainder.all_coeffs()))  # r_0 .. r_{2d}
    if coeffs[0] != big_q ** d:
        return None
    h = [0] * (d + 1)
    for i in range(d, -1, -1):
        total = coeffs[d + i]
        t = 1
        while i + 2 * t <= d:
            total -= h[i + 2 * t] * comb(i + 2 * t, t) * big_q ** t
            t += 1
        h[i] = total
    # x^d (x + Q/x)^j = sum_t C(j, t) Q^t x^(d + j - 2t)
    rebuilt = [0] * (2 * d + 1)
    for j, hj in enumerate(h):
        for t in range(j + 1):
            rebuilt[d + j - 2 * t] += hj * comb(j, t) * big_q ** t
    if rebuilt != coeffs:
        return None
    return Poly(list(reversed(h)), x)


def _roots_in_window(g: Poly, upper: int) -> Optional[int]:
    """
    Real roots of g in [0, upper), with multiplicity; None when undecided
    """
    inside = 0
    square_free = g.sqf_part()
    for (a, b), multiplicity in g.intervals():
        steps = 0
        while True:
            if b < 0 or a >= upper:
                break
            if a >= 0 and b < upper:
                inside += multiplicity
                break
            if a <= 0 <= b and g.eval(0) == 0:
                inside += multiplicity
                break
            if a <= upper <= b and g.eval(upper) == 0:
                break
            if steps >= REFINE_STEPS:
                return None
            a, b = square_free.refine_root(a, b, steps=1)
            steps += 1
    return inside


def certify(poly: Poly, big_q: int) -> Optional[bool]:
    """
    Whether every root of poly has modulus sqrt(Q)

    Real roots ±sqrt(Q) are removed exactly; the rest must come in pairs
    α, Q/α = conj(α), i.e. the trace polynomial h must have all roots real
    and inside (-2 sqrt(Q), 2 sqrt(Q)). That is decided on G(z) = ±h(y)h(-y),
    z = y^2, by exact root isolation on [0, 4Q).

    Returns:
        True, False, or None when refinement ran out
    """
    remainder, _ = split_real_roots(poly, big_q)
    if remainder.degree() == 0:
        return True
    trace = trace_polynomial(remainder, big_q)
    if trace is None:
        return False
    d = trace.degree()
    product_expr = (trace.as_expr() * trace.as_expr().subs(x, -x)).expand()
    g_coeffs = Poly(product_expr, x).all_coeffs()  # only even powers survive
    g = Poly(list(reversed(list(reversed(g_coeffs))[::2])), x)
    counted = _roots_in_window(g, 4 * big_q)
    if counted is None:
        return None
    return counted == d


def _box(big_q: int, n: int, sign: int) -> List[range]:
    """Ranges for the free high coefficients a_{n-1} .. a_{n - floor(n/2)}"""
    ranges = []
    for i in range(1, n // 2 + 1):
        if n % 2 == 0 and i == n // 2 and sign < 0:
            ranges.append(range(0, 1))
            continue
        bound = isqrt(comb(n, i) ** 2 * big_q ** i)
        ranges.append(range(-bound, bound + 1))
    return ranges


def box_size(q: int, k: int, n: int) -> int:
    big_q = _validate(q, k, n)
    if _exact_half_power(big_q, n) is None:
        return 0
    return sum(prod(len(r) for r in _box(big_q, n, sign)) for sign in (1, -1))


def _coefficients(big_q: int, n: int, a0: int, free: Sequence[int]) -> Tuple[int, ...]:
    """a_0 .. a_{n-1} from the constant term and the free high coefficients"""
    a = [0] * (n + 1)
    a[0], a[n] = a0, 1
    for i, value in enumerate(free, start=1):
        a[n - i] = value
        if i < n - i:
            low = a0 * value
            if low % big_q ** i:
                return ()
            a[i] = low // big_q ** i
    return tuple(a[:n])


def enumerate_weil(q: int, k: int, n: int) -> WeilEnumeration:
    """
    Every monic integer polynomial of degree n whose roots all have modulus q^(k/2)

    Args:
        q: prime power
        k: weight
        n: degree, at most MAX_DEGREE

    Returns:
        WeilEnumeration, certified and undecided lists sorted by coefficients

    Raises:
        WeilRangeError: parameters outside desk scale
    """
    big_q = _validate(q, k, n)
    half = _exact_half_power(big_q, n)
    result = WeilEnumeration()
    if half is None:
        return result
    size = box_size(q, k, n)
    if size > BOX_CAP:
        raise WeilRangeError(f"coefficient box for (q={q}, k={k}, n={n}) has {size} points, cap {BOX_CAP}")
    logger.debug(f"Enumerating Weil polynomials q={q} k={k} n={n} over {size} candidates")

    for sign in (1, -1):
        a0 = sign * half
        for free in product(*_box(big_q, n, sign)):
            coefficients = _coefficients(big_q, n, a0, free)
            if not coefficients:
                continue
            candidate = WeilPolynomial(q, k, n, coefficients)
            verdict = certify(candidate.as_poly(), big_q)
            if verdict is None:
                result.undecided.append(candidate)
            elif verdict:
                result.certified.append(WeilPolynomial(q, k, n, coefficients, certified=True))
    result.certified.sort()
    result.undecided.sort()
    if result.undecided:
        logger.warning(f"{len(result.undecided)} Weil candidates left undecided for q={q} k={k} n={n}")
    return result


def reciprocal_partner(poly: WeilPolynomial) -> WeilPolynomial:
    """
    The monic polynomial whose roots are Q/α for the roots α of poly

    Raises:
        WeilRangeError: the result does not have integer coefficients
    """
    big_q = poly.weight_modulus_squared
    a = poly.all_coefficients
    a0 = a[0]
    n = poly.n
    coefficients = []
    for j in range(n):
        numerator = a[n - j] * big_q ** (n - j)
        if numerator % a0:
            raise WeilRangeError(f"{poly} has no integral reciprocal partner")
        coefficients.append(numerator // a0)
    return WeilPolynomial(poly.q, poly.k, n, tuple(coefficients), poly.certified)


def count_local_lfactors(q: int, k: int, n_max: int) -> pd.DataFrame:
    """
    Number of certified Weil polynomials of each degree 1..n_max

    Returns:
        DataFrame with columns degree, count, undecided
    """
    rows = []
    for n in range(1, n_max + 1):
        found = enumerate_weil(q, k, n)
        rows.append({"degree": n, "count": len(found.certified), "undecided": len(found.undecided)})
    return pd.DataFrame(rows, columns=["degree", "count", "undecided"])


def ramanujan_local_factor_count(q: int) -> int:
    """Degree-2 weight-11 local factors at q"""
    return len(enumerate_weil(q, 11, 2).certified)
