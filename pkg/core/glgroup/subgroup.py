"""
Explicit subgroups: closure, normalizers, Sylow subgroups and naming
显式子群：生成、正规化子、Sylow 子群
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple
import logging

from sympy import primefactors

from core.errors import GroupError, SearchCapExceeded
from .matrices import (
    AmbientSpec,
    Entries,
    MatrixModP,
    ambient_order,
    element_order,
    elements,
    multiplier,
)

logger = logging.getLogger(__name__)

DEFAULT_ORDER_CAP = 10000


@dataclass(frozen=True)
class Subgroup:
    """
    An explicit subgroup of an ambient GL(m, p) or GL(m, p) x GL(1, p).

    Elements are kept as flat entry tuples; equality and hashing depend on
    the ambient and the element set only.
    """
    ambient: AmbientSpec
    elements: FrozenSet[Entries]
    generators: Tuple[Entries, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.ambient.identity() not in self.elements:
            raise GroupError("subgroup element set does not contain the identity")
        if ambient_order(self.ambient) % len(self.elements):
            raise GroupError(
                f"order {len(self.elements)} does not divide #{self.ambient.label} = {ambient_order(self.ambient)}"
            )

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        if isinstance(x, MatrixModP):
            x = x.entries
        return tuple(x) in self.elements

    def sorted_elements(self) -> Tuple[Entries, ...]:
        return tuple(sorted(self.elements))

    def key(self) -> Tuple[Entries, ...]:
        """Canonical fingerprint: the sorted element tuple"""
        return self.sorted_elements()

    def matrices(self) -> List[MatrixModP]:
        return [self.ambient.matrix(x) for x in self.sorted_elements()]

    def generator_matrices(self) -> List[MatrixModP]:
        return [self.ambient.matrix(x) for x in self.generators]

    def to_dict(self) -> Dict[str, object]:
        k = self.ambient.dim
        return {
            "ambient": self.ambient.label,
            "order": self.order,
            "label": identify_group(self),
            "generators": [
                [list(g[i * k:(i + 1) * k]) for i in range(k)] for g in self.generators
            ],
        }


def close_raw(
    spec: AmbientSpec,
    generators: Iterable[Entries],
    limit: Optional[int] = None,
) -> Optional[FrozenSet[Entries]]:
    """
    Element set generated by raw matrices, breadth first from the identity

    Returns None as soon as more than `limit` elements have been found.
    """
    mul = multiplier(spec.dim)
    p = spec.p
    one = spec.identity()
    gens = sorted(set(g for g in generators if g != one))
    seen = {one}
    frontier = [one]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = mul(x, g, p)
                if y not in seen:
                    seen.add(y)
                    if limit is not None and len(seen) > limit:
                        return None
                    new.append(y)
        frontier = new
    return frozenset(seen)


def canonical_generators(spec: AmbientSpec, members: Iterable[Entries]) -> Tuple[Entries, ...]:
    """Greedy generating set: scan sorted elements, keep each one not yet generated"""
    gens: List[Entries] = []
    current = {spec.identity()}
    for x in sorted(members):
        if x not in current:
            gens.append(x)
            current = close_raw(spec, gens)
    return tuple(gens)


def make_subgroup(spec: AmbientSpec, members: Iterable[Entries]) -> Subgroup:
    members = frozenset(members)
    return Subgroup(spec, members, canonical_generators(spec, members))


def _infer_ambient(generators: Sequence) -> AmbientSpec:
    for g in generators:
        if isinstance(g, MatrixModP):
            return AmbientSpec(g.p, g.m)
    raise GroupError("closure needs an ambient when no generator is a MatrixModP")


def closure(
    generators: Sequence,
    ambient: Optional[AmbientSpec] = None,
    order_cap: int = DEFAULT_ORDER_CAP,
) -> Subgroup:
    """
    Subgroup generated by matrices

    Args:
        generators: MatrixModP instances, nested rows or flat entry tuples
        ambient: containing group; inferred from a MatrixModP generator if omitted
        order_cap: largest order tolerated

    Returns:
        the generated Subgroup with its full element set

    Raises:
        SearchCapExceeded: the generated group has more than order_cap elements
    """
    spec = ambient or _infer_ambient(generators)
    raw = [spec.raw(g) for g in generators]
    members = close_raw(spec, raw, limit=order_cap)
    if members is None:
        raise SearchCapExceeded(f"closure in {spec.label} exceeds the order cap {order_cap}")
    gens = tuple(sorted(set(g for g in raw if g != spec.identity())))
    return Subgroup(spec, members, gens)


def trivial_subgroup(spec: AmbientSpec) -> Subgroup:
    return Subgroup(spec, frozenset([spec.identity()]))


def whole_group(spec: AmbientSpec) -> Subgroup:
    return make_subgroup(spec, elements(spec))


def generators_of(h: Subgroup) -> Tuple[Entries, ...]:
    if h.generators or h.order == 1:
        return h.generators
    return canonical_generators(h.ambient, h.elements)


def conjugate_raw(spec: AmbientSpec, members: Iterable[Entries], g: Entries) -> FrozenSet[Entries]:
    """g M g^-1 for every M in members"""
    mul = multiplier(spec.dim)
    p = spec.p
    g_inv = spec.inv(g)
    return frozenset(mul(mul(g, x, p), g_inv, p) for x in members)


def conjugate(h: Subgroup, g) -> Subgroup:
    spec = h.ambient
    g = spec.raw(g)
    return Subgroup(spec, conjugate_raw(spec, h.elements, g), tuple(sorted(conjugate_raw(spec, generators_of(h), g))))


def _normalizes(spec: AmbientSpec, g: Entries, gens: Sequence[Entries], members: FrozenSet[Entries]) -> bool:
    mul = multiplier(spec.dim)
    p = spec.p
    g_inv = spec.inv(g)
    return all(mul(mul(g, x, p), g_inv, p) in members for x in gens)


def normalizer(h: Subgroup, within: Optional[Subgroup] = None) -> Subgroup:
    """
    N(h) inside `within`, or inside the ambient group when omitted

    Args:
        h: subgroup to normalise
        within: containing subgroup

    Returns:
        the normalizer as a Subgroup
    """
    spec = h.ambient
    pool = within.elements if within is not None else elements(spec)
    gens = generators_of(h)
    members = [g for g in pool if _normalizes(spec, g, gens, h.elements)]
    return make_subgroup(spec, members)


def is_subgroup_of(k: Subgroup, h: Subgroup) -> bool:
    return k.ambient == h.ambient and k.elements <= h.elements


def is_normal(h: Subgroup, k: Subgroup) -> bool:
    """
    Whether k is a normal subgroup of h, by conjugating k's generators

    Raises:
        GroupError: k is not contained in h
    """
    if not is_subgroup_of(k, h):
        raise GroupError("is_normal needs k contained in h")
    spec = h.ambient
    k_gens = generators_of(k)
    return all(_normalizes(spec, g, k_gens, k.elements) for g in generators_of(h))


def order_of(h: Subgroup, x: Entries) -> int:
    return element_order(x, h.ambient.dim, h.ambient.p)


def element_order_counts(h: Subgroup) -> Dict[int, int]:
    """Number of elements of each order"""
    counts = Counter(order_of(h, x) for x in h.elements)
    return dict(sorted(counts.items()))


def is_abelian(h: Subgroup) -> bool:
    spec = h.ambient
    gens = generators_of(h)
    return all(spec.mul(a, b) == spec.mul(b, a) for a in gens for b in gens)


def _prime_power_part(n: int, prime: int) -> int:
    part = 1
    while n % prime == 0:
        n //= prime
        part *= prime
    return part


def _is_power_of(n: int, prime: int) -> bool:
    return _prime_power_part(n, prime) == n


def sylow(h: Subgroup, ell: int) -> Subgroup:
    """
    A Sylow ℓ-subgroup of h

    Grows an ℓ-subgroup P one element at a time, each time adjoining the
    smallest ℓ-power-order element of N_h(P) outside P.

    Raises:
        GroupError: ℓ does not divide |h|
    """
    if h.order % ell:
        raise GroupError(f"{ell} does not divide |h| = {h.order}")
    spec = h.ambient
    target = _prime_power_part(h.order, ell)
    ell_elements = [x for x in sorted(h.elements) if _is_power_of(order_of(h, x), ell)]
    gens: List[Entries] = []
    current = frozenset([spec.identity()])
    while len(current) < target:
        for x in ell_elements:
            if x not in current and _normalizes(spec, x, gens, current):
                gens.append(x)
                current = close_raw(spec, gens)
                break
        else:
            raise GroupError(f"no {ell}-element normalises the current {ell}-subgroup")
    return Subgroup(spec, current, tuple(gens))


def normal_p_core(h: Subgroup, ell: int) -> Subgroup:
    """
    Largest normal ℓ-subgroup of h: the intersection of all Sylow ℓ-subgroups

    Returns:
        O_ℓ(h); the trivial group when ℓ does not divide |h|
    """
    spec = h.ambient
    if h.order % ell:
        return trivial_subgroup(spec)
    p_sylow = sylow(h, ell)
    core = set(p_sylow.elements)
    for g in sorted(h.elements):
        if len(core) == 1:
            break
        core &= conjugate_raw(spec, p_sylow.elements, g)
    return make_subgroup(spec, core)


def normal_closure(h: Subgroup, members: Iterable[Entries]) -> Subgroup:
    """Smallest normal subgroup of h containing the given elements"""
    spec = h.ambient
    conjugates = set()
    for x in members:
        conjugates |= {spec.mul(spec.mul(g, x), spec.inv(g)) for g in h.elements}
    return make_subgroup(spec, close_raw(spec, conjugates))


def normal_subgroups(h: Subgroup) -> List[Subgroup]:
    """
    Every normal subgroup of h, as joins of normal closures of single elements

    Returns:
        normal subgroups sorted by (order, canonical fingerprint)
    """
    spec = h.ambient
    found: Dict[FrozenSet[Entries], Subgroup] = {}
    for x in sorted(h.elements):
        closed = normal_closure(h, [x])
        found.setdefault(closed.elements, closed)
    layer = list(found.values())
    while layer:
        new = []
        for a in layer:
            for b in list(found.values()):
                if a.elements <= b.elements or b.elements <= a.elements:
                    continue
                joined = close_raw(spec, set(generators_of(a)) | set(generators_of(b)))
                if joined not in found:
                    found[joined] = make_subgroup(spec, joined)
                    new.append(found[joined])
        layer = new
    return sorted(found.values(), key=lambda k: (k.order, k.key()))


def block_projection(h: Subgroup) -> Subgroup:
    """Image of h in the GL(m) block"""
    spec = h.ambient
    gl_spec = spec.gl_spec
    return make_subgroup(gl_spec, {spec.gl_part(x) for x in h.elements})


def cyclotomic_projection(h: Subgroup) -> Subgroup:
    """Image of h in the GL(1) block, as a subgroup of GL(1, p)"""
    spec = h.ambient
    gl1 = AmbientSpec(spec.p, 1)
    return make_subgroup(gl1, {(spec.cyclotomic_part(x),) for x in h.elements})


def surjects_onto_gl1(h: Subgroup) -> bool:
    return cyclotomic_projection(h).order == h.ambient.p - 1


def _signature(counts: Dict[int, int]) -> FrozenSet[Tuple[int, int]]:
    return frozenset(counts.items())


NON_ABELIAN_SIGNATURES: Dict[FrozenSet[Tuple[int, int]], str] = {
    _signature({1: 1, 2: 3, 3: 2}): "S_3",
    _signature({1: 1, 2: 5, 4: 2}): "D_8",
    _signature({1: 1, 2: 1, 4: 6}): "Q_8",
    _signature({1: 1, 2: 3, 3: 8}): "A_4",
    _signature({1: 1, 2: 7, 3: 2, 6: 2}): "D_12",
    _signature({1: 1, 2: 1, 3: 2, 4: 6, 6: 2}): "Dic_12",
    _signature({1: 1, 2: 11, 5: 4, 10: 4}): "D_20",
    _signature({1: 1, 2: 1, 4: 10, 5: 4, 10: 4}): "Dic_20",
    _signature({1: 1, 2: 5, 4: 10, 5: 4}): "F_20",
    _signature({1: 1, 2: 1, 3: 8, 4: 6, 6: 8}): "SL(2,3)",
    _signature({1: 1, 2: 9, 3: 8, 4: 6}): "S_4",
}


def _abelian_label(order: int, counts: Dict[int, int]) -> str:
    exponent = max(counts)
    if exponent == order:
        return f"C_{order}"
    rest = order // exponent
    # rank <= 2 iff at most ell^2 elements satisfy x^ell = 1 for every prime ell
    for ell in primefactors(order):
        if sum(c for k, c in counts.items() if ell % k == 0) > ell * ell:
            return f"abelian order-{order} group"
    if order == 4:
        return "V_4"
    return f"C_{exponent}xC_{rest}"


def identify_group(h: Subgroup) -> str:
    """
    Name of a small group from its element-order statistics

    Abelian groups of rank at most two are named C_a x C_b; a non-abelian
    group is named from a fixed signature table, or as a dihedral group
    D_n when it has a cyclic subgroup of index two and the matching
    number of involutions. Anything else is "order-n group".
    """
    n = h.order
    counts = element_order_counts(h)
    if n == 1:
        return "C_1"
    if is_abelian(h):
        return _abelian_label(n, counts)
    label = NON_ABELIAN_SIGNATURES.get(_signature(counts))
    if label:
        return label
    half = n // 2
    if n % 2 == 0 and half in counts:
        involutions = half + (1 if half % 2 == 0 else 0)
        if counts.get(2, 0) == involutions:
            return f"D_{n}"
    return f"order-{n} group"
