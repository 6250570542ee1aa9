"""
Weil Module - Weil 多项式与 Hasse 区间
Desk-scale enumeration of Weil polynomials and local L-factors
"""

from .polynomials import (
    BOX_CAP,
    MAX_DEGREE,
    WeilEnumeration,
    WeilPolynomial,
    box_size,
    certify,
    check_prime_power,
    count_local_lfactors,
    enumerate_weil,
    ramanujan_local_factor_count,
    reciprocal_partner,
)
from .hasse import HasseInterval, hasse_interval, hm_degree_threshold

__all__ = [
    "BOX_CAP",
    "MAX_DEGREE",
    "WeilEnumeration",
    "WeilPolynomial",
    "box_size",
    "certify",
    "check_prime_power",
    "count_local_lfactors",
    "enumerate_weil",
    "ramanujan_local_factor_count",
    "reciprocal_partner",
    "HasseInterval",
    "hasse_interval",
    "hm_degree_threshold",
]
