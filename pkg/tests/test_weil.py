from itertools import product
from math import comb, isqrt
from typing import Set, Tuple

import mpmath
import numpy as np
import pytest
from sympy import Poly, factor_list, symbols

from core.errors import WeilRangeError
from core.weil import (
    MAX_DEGREE,
    box_size,
    count_local_lfactors,
    enumerate_weil,
    hasse_interval,
    hm_degree_threshold,
    ramanujan_local_factor_count,
    reciprocal_partner,
)

x = symbols("x")


def _on_circle(coefficients: list, big_q: int) -> bool:
    """Exact factorisation, then high-precision roots of each irreducible factor"""
    _, factors = factor_list(Poly(coefficients, x).as_expr())
    with mpmath.workdps(40):
        for factor, _ in factors:
            integral = [int(c) for c in Poly(factor, x).all_coeffs()]
            roots = mpmath.polyroots(integral, maxsteps=200, extraprec=80)
            for root in roots:
                if abs(abs(root) ** 2 - big_q) > mpmath.mpf(10) ** -20:
                    return False
    return True


def _weil_oracle(q: int, k: int, n: int) -> Set[Tuple[int, ...]]:
    """
    Every monic integer polynomial in the symmetric-function box whose roots
    all lie on |z| = sqrt(q^k); returned as (a_0, ..., a_{n-1})
    """
    big_q = q ** k
    half = isqrt(big_q ** n)
    if half * half != big_q ** n:
        return set()
    ranges = []
    for i in range(n - 1, 0, -1):
        bound = isqrt(comb(n, n - i) ** 2 * big_q ** (n - i))
        ranges.append(range(-bound, bound + 1))
    found = set()
    for a0 in (half, -half):
        for high in product(*ranges):
            coefficients = [1, *high, a0]  # x^n, a_{n-1}, ..., a_1, a_0
            roots = np.roots(coefficients)
            if np.max(np.abs(np.abs(roots) ** 2 - big_q)) > 1e-3 * big_q:
                continue
            if _on_circle(coefficients, big_q):
                found.add(tuple(reversed(coefficients[1:])))
    return found


@pytest.mark.slow
@pytest.mark.parametrize("q, k, n", list(product([2, 3, 4], [1, 2], [1, 2, 3])))
def test_enumeration_matches_oracle(q: int, k: int, n: int) -> None:
    found = enumerate_weil(q, k, n)
    assert found.undecided == []
    assert {poly.coefficients for poly in found} == _weil_oracle(q, k, n)


def test_odd_degree_needs_a_square() -> None:
    assert len(enumerate_weil(2, 1, 1)) == 0
    assert len(enumerate_weil(3, 1, 3)) == 0


def test_degree_two_over_f2() -> None:
    found = enumerate_weil(2, 1, 2)
    # x^2 + a x + 2 for |a| <= 2, and x^2 - 2
    assert sorted(poly.coefficients for poly in found) == [(-2, 0), (2, -2), (2, -1), (2, 0), (2, 1), (2, 2)]
    assert all(poly.certified for poly in found)


def test_linear_factors_over_f4() -> None:
    assert [poly.coefficients for poly in enumerate_weil(4, 1, 1)] == [(-2,), (2,)]


def test_count_table() -> None:
    frame = count_local_lfactors(2, 1, 2)
    assert list(frame.columns) == ["degree", "count", "undecided"]
    assert frame["count"].tolist() == [0, 6]
    assert frame["undecided"].tolist() == [0, 0]


def test_reciprocal_partner_is_the_polynomial_itself() -> None:
    for poly in enumerate_weil(3, 1, 2):
        assert reciprocal_partner(poly).coefficients == poly.coefficients


def test_weil_polynomial_views() -> None:
    (poly,) = [p for p in enumerate_weil(2, 1, 2) if p.coefficients == (2, 1)]
    assert str(poly) == "x**2 + x + 2"
    assert poly.is_irreducible
    assert poly.root_moduli() == pytest.approx([2 ** 0.5, 2 ** 0.5])
    data = poly.to_dict()
    assert data["coefficients"] == [2, 1]
    assert data["certified"] is True


def test_weight_eleven_degree_two_factors_at_two() -> None:
    # x^2 + a x + 2^11 with a^2 <= 2^13, and x^2 - 2^11
    assert ramanujan_local_factor_count(2) == 2 * 90 + 1 + 1


@pytest.mark.parametrize("q, k, n", [(6, 1, 2), (1, 1, 2), (2, 0, 2), (2, 1, 0), (2, 1, MAX_DEGREE + 1)])
def test_out_of_range_parameters(q: int, k: int, n: int) -> None:
    with pytest.raises(WeilRangeError):
        enumerate_weil(q, k, n)


def test_hasse_interval_over_f2() -> None:
    interval = hasse_interval(2)
    assert (interval.min, interval.max) == (1, 5)
    assert str(interval) == "[1, 5]"
    assert 5 in interval
    assert 6 not in interval


def test_hasse_intervals_used_for_elliptic_curves() -> None:
    assert str(hasse_interval(11)) == "[6, 18]"
    assert str(hasse_interval(16)) == "[9, 25]"
    with pytest.raises(WeilRangeError):
        hasse_interval(12)


def test_hermite_minkowski_threshold() -> None:
    assert hm_degree_threshold(2, 1, 3) == 6561
    assert hm_degree_threshold(1, 1, 2) == 4
    with pytest.raises(WeilRangeError):
        hm_degree_threshold(0, 1, 3)
    with pytest.raises(WeilRangeError):
        hm_degree_threshold(2, 1, 4)


@pytest.mark.parametrize("q, k, n, size", [(2, 1, 1, 0), (4, 1, 1, 2), (2, 1, 2, 6), (3, 1, 2, 8)])
def test_box_size_bounds_the_enumeration(q: int, k: int, n: int, size: int) -> None:
    assert box_size(q, k, n) == size
    assert len(enumerate_weil(q, k, n)) <= size
