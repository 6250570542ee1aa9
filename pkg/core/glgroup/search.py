"""
Exhaustive subgroup search up to conjugacy
子群穷举搜索（共轭意义下）
"""

from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Set, Tuple
import logging

from core.errors import SearchCapExceeded
from .matrices import (
    AmbientSpec,
    Entries,
    MatrixModP,
    ambient_order,
    element_orders,
    elements,
)
from .subgroup import (
    Subgroup,
    canonical_generators,
    close_raw,
    conjugate_raw,
    make_subgroup,
    normalizer,
    trivial_subgroup,
)

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_ORDER_CAP = 64
ALL_SUBGROUPS_CAP = 200


def has_element_of_order(spec: AmbientSpec, k: int) -> Tuple[bool, Optional[MatrixModP]]:
    """
    Exhaustive scan for an element of order k

    Args:
        spec: ambient group
        k: target order, k >= 1

    Returns:
        (found, witness); the witness is the smallest such element in the
        lexicographic order, the identity when k = 1
    """
    if k < 1:
        raise ValueError(f"order must be >= 1, got {k}")
    if k == 1:
        return True, spec.matrix(spec.identity())
    if ambient_order(spec) % k:
        return False, None
    orders = element_orders(spec)
    for x in elements(spec):
        if orders[x] == k:
            return True, spec.matrix(x)
    return False, None


@lru_cache(maxsize=None)
def _acting_generators(spec: AmbientSpec, seed: Optional[FrozenSet[Entries]]) -> Tuple[Entries, ...]:
    if seed is None:
        return canonical_generators(spec, elements(spec))
    return normalizer(make_subgroup(spec, seed)).generators


def _orbit(spec: AmbientSpec, members: FrozenSet[Entries], acting: Tuple[Entries, ...]) -> Set[FrozenSet[Entries]]:
    """All conjugates of an element set under the group generated by `acting`"""
    orbit = {members}
    frontier = [members]
    while frontier:
        new = []
        for current in frontier:
            for g in acting:
                image = conjugate_raw(spec, current, g)
                if image not in orbit:
                    orbit.add(image)
                    new.append(image)
        frontier = new
    return orbit


def _cyclic_representatives(spec: AmbientSpec, pool: List[Entries]) -> List[Entries]:
    """One element per cyclic subgroup: <R, g> only depends on <g>"""
    seen: Set[FrozenSet[Entries]] = set()
    reps = []
    for g in sorted(pool):
        cyclic = close_raw(spec, [g])
        if cyclic not in seen:
            seen.add(cyclic)
            reps.append(g)
    return reps


@lru_cache(maxsize=None)
def subgroups_dividing(
    spec: AmbientSpec,
    n: int,
    seed: Optional[FrozenSet[Entries]] = None,
) -> Tuple[Subgroup, ...]:
    """
    Class representatives of all subgroups whose order divides n

    Layered search: every representative found is extended by each candidate
    element, keeping closures whose order divides n. Each new closure
    registers its whole conjugacy orbit, so a class is reported once, by its
    lexicographically smallest member.

    With a seed, only subgroups containing the seed are produced and the
    conjugation is by the seed's normalizer.
    """
    one = spec.identity()
    base = seed if seed is not None else frozenset([one])
    base_gens = canonical_generators(spec, base)

    if seed is None:
        orders = element_orders(spec)
        pool = [x for x in elements(spec) if x != one and n % orders[x] == 0]
    else:
        pool = []
        for x in elements(spec):
            if x in base:
                continue
            joined = close_raw(spec, list(base_gens) + [x], limit=n)
            if joined is not None and n % len(joined) == 0:
                pool.append(x)
    pool = _cyclic_representatives(spec, pool)
    acting = _acting_generators(spec, seed)
    logger.debug(
        f"Subgroup search in {spec.label}: |H| dividing {n}, "
        f"{len(pool)} candidate generators, seed order {len(base)}"
    )

    registered: Set[FrozenSet[Entries]] = set(_orbit(spec, base, acting))
    classes: Dict[FrozenSet[Entries], Tuple[Entries, ...]] = {base: base_gens}
    layer = [base]
    while layer:
        new_layer = []
        for rep in layer:
            gens = classes[rep]
            for g in pool:
                if g in rep:
                    continue
                members = close_raw(spec, list(gens) + [g], limit=n)
                if members is None or n % len(members) or members in registered:
                    continue
                orbit = _orbit(spec, members, acting)
                registered |= orbit
                smallest = min(orbit, key=lambda s: tuple(sorted(s)))
                classes[smallest] = canonical_generators(spec, smallest)
                new_layer.append(smallest)
        layer = new_layer

    result = [Subgroup(spec, members, gens) for members, gens in classes.items()]
    result.sort(key=lambda h: (h.order, h.key()))
    logger.debug(f"Subgroup search in {spec.label}: {len(result)} classes with order dividing {n}")
    return tuple(result)


def subgroups_of_order(
    spec: AmbientSpec,
    n: int,
    containing: Optional[Subgroup] = None,
    max_order: int = DEFAULT_SEARCH_ORDER_CAP,
) -> List[Subgroup]:
    """
    Conjugacy-class representatives of the subgroups of order exactly n

    Args:
        spec: ambient group
        n: target order
        containing: optional seed every result must contain; results are then
            representatives up to conjugation by the seed's normalizer
        max_order: largest n searched

    Returns:
        representatives sorted by canonical fingerprint; empty when n does
        not divide the ambient order

    Raises:
        SearchCapExceeded: n > max_order, or the ambient is too large to enumerate
    """
    if n > max_order:
        raise SearchCapExceeded(f"subgroup search for order {n} exceeds the cap {max_order}")
    if n < 1 or ambient_order(spec) % n:
        return []
    seed = None
    if containing is not None:
        if n % containing.order:
            return []
        seed = containing.elements if containing.order > 1 else None
    return [h for h in subgroups_dividing(spec, n, seed) if h.order == n]


def subgroups_dividing_order(
    spec: AmbientSpec,
    n: int,
    containing: Optional[Subgroup] = None,
    max_order: int = DEFAULT_SEARCH_ORDER_CAP,
) -> List[Subgroup]:
    """
    Representatives of every subgroup whose order divides n, containing the seed if given

    Raises:
        SearchCapExceeded: n > max_order
    """
    if n > max_order:
        raise SearchCapExceeded(f"subgroup search for order {n} exceeds the cap {max_order}")
    seed = None
    if containing is not None:
        if n % containing.order:
            return []
        seed = containing.elements if containing.order > 1 else None
    return list(subgroups_dividing(spec, n, seed))


def conjugacy_class_size(h: Subgroup) -> int:
    """Number of ambient conjugates of h"""
    acting = _acting_generators(h.ambient, None)
    return len(_orbit(h.ambient, h.elements, acting))


def all_subgroups(spec: AmbientSpec) -> List[Subgroup]:
    """
    Every subgroup of a tiny ambient, without conjugacy reduction

    Raises:
        SearchCapExceeded: the ambient has more than ALL_SUBGROUPS_CAP elements
    """
    size = ambient_order(spec)
    if size > ALL_SUBGROUPS_CAP:
        raise SearchCapExceeded(f"{spec.label} is too large for a full subgroup enumeration")
    found: Dict[FrozenSet[Entries], Subgroup] = {}
    start = trivial_subgroup(spec)
    found[start.elements] = start
    layer = [start]
    pool = _cyclic_representatives(spec, [x for x in elements(spec) if x != spec.identity()])
    while layer:
        new_layer = []
        for h in layer:
            for g in pool:
                if g in h.elements:
                    continue
                members = close_raw(spec, list(h.generators) + [g])
                if members not in found:
                    found[members] = make_subgroup(spec, members)
                    new_layer.append(found[members])
        layer = new_layer
    return sorted(found.values(), key=lambda k: (k.order, k.key()))
