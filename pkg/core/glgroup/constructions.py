"""
Named subgroups of GL(m, p): Singer cycles, unipotent, Borel, SL, scalars
"""

from typing import List

from sympy import primitive_root

from core.errors import GroupError
from .matrices import AmbientSpec, Entries, MatrixModP, element_order, gl, identity
from .subgroup import Subgroup, closure


def _elementary(m: int, i: int, j: int, value: int = 1) -> Entries:
    entries = list(identity(m))
    entries[i * m + j] = value
    return tuple(entries)


def _diagonal(m: int, values: List[int]) -> Entries:
    return tuple(values[i] if i == j else 0 for i in range(m) for j in range(m))


def _in_ambient(spec: AmbientSpec, gens: List[Entries]) -> Subgroup:
    return closure([spec.embed(g) for g in gens], ambient=spec)


def singer_cycle(p: int) -> MatrixModP:
    """
    A 2x2 matrix of order p^2 - 1: multiplication by a generator of F_{p^2}^*

    Scans companion matrices [[0, b], [1, a]] of x^2 - a x - b in
    lexicographic (a, b) order and returns the first of full order.
    """
    target = p * p - 1
    for a in range(p):
        for b in range(1, p):
            entries = (0, b, 1, a)
            if element_order(entries, 2, p) == target:
                return MatrixModP(p, 2, entries)
    raise GroupError(f"no Singer cycle found mod {p}")


def singer_subgroup(p: int) -> Subgroup:
    return closure([singer_cycle(p)])


def unipotent(p: int, m: int = 2) -> MatrixModP:
    """The transvection I + E_{1,2}"""
    return MatrixModP(p, m, _elementary(m, 0, 1))


def unipotent_subgroup(spec: AmbientSpec) -> Subgroup:
    """Upper unitriangular matrices in the GL(m) block, trivial GL(1) entry"""
    m = spec.m
    return _in_ambient(spec, [_elementary(m, i, j) for i in range(m) for j in range(i + 1, m)])


def borel_subgroup(spec: AmbientSpec) -> Subgroup:
    """Upper triangular matrices, with the full GL(1) block for block ambients"""
    m, g = spec.m, primitive_root(spec.p)
    gens = [_elementary(m, i, j) for i in range(m) for j in range(i + 1, m)]
    for i in range(m):
        values = [1] * m
        values[i] = g
        gens.append(_diagonal(m, values))
    embedded = [spec.embed(x) for x in gens]
    if spec.block:
        embedded.append(spec.embed(identity(m), g))
    return closure(embedded, ambient=spec)


def affine_subgroup(spec: AmbientSpec) -> Subgroup:
    """[[a, b], [0, 1]]: order p(p - 1)"""
    if spec.m != 2:
        raise GroupError("affine_subgroup needs m = 2")
    g = primitive_root(spec.p)
    return _in_ambient(spec, [(g, 0, 0, 1), (1, 1, 0, 1)])


def special_linear(spec: AmbientSpec) -> Subgroup:
    """SL(m, p), generated by the elementary transvections"""
    m = spec.m
    return _in_ambient(spec, [_elementary(m, i, j) for i in range(m) for j in range(m) if i != j])


def scalar_subgroup(spec: AmbientSpec) -> Subgroup:
    m = spec.m
    return _in_ambient(spec, [_diagonal(m, [primitive_root(spec.p)] * m)])


def general_linear(m: int, p: int) -> Subgroup:
    """GL(m, p) as a Subgroup: SL together with diag(g, 1, ..., 1)"""
    spec = gl(m, p)
    values = [1] * m
    values[0] = primitive_root(p)
    gens = [_elementary(m, i, j) for i in range(m) for j in range(m) if i != j] + [_diagonal(m, values)]
    return closure(gens, ambient=spec, order_cap=10 ** 6)
