"""
Irreducibility tests and the fixed-vector check for p-cores in characteristic p
"""

from dataclasses import dataclass, asdict
from typing import Dict, List, Tuple
import logging

import numpy as np

from core.errors import GroupError
from .linalg import as_square, nullspace_mod_p, rank_mod_p
from .matrices import Entries
from .subgroup import Subgroup, generators_of, normal_p_core

logger = logging.getLogger(__name__)

LEMMA_VACUOUS = "lemma vacuous"
INVARIANT_SUBSPACE = "invariant subspace"
TRIVIAL_ACTION = "trivial action"
VIOLATED = "violated"

Line = Tuple[int, int]


def _gl_generators(h: Subgroup) -> List[Entries]:
    return [h.ambient.gl_part(g) for g in generators_of(h)]


def projective_line(p: int) -> List[Line]:
    """P^1(F_p), each point with first nonzero coordinate 1"""
    return [(1, t) for t in range(p)] + [(0, 1)]


def invariant_lines(h: Subgroup) -> List[Line]:
    """
    Lines of F_p^2 stable under every generator of h (GL(2) block)

    Raises:
        GroupError: the GL block is not 2-dimensional
    """
    spec = h.ambient
    if spec.m != 2:
        raise GroupError(f"invariant_lines needs m = 2, got m = {spec.m}")
    p = spec.p
    gens = _gl_generators(h)
    stable = []
    for v0, v1 in projective_line(p):
        if all(((a * v0 + b * v1) * v1 - (c * v0 + d * v1) * v0) % p == 0 for a, b, c, d in gens):
            stable.append((v0, v1))
    return stable


def is_absolutely_irreducible(h: Subgroup) -> bool:
    """Burnside: the elements of h span all of M_m(F_p)"""
    spec = h.ambient
    span = np.array([spec.gl_part(x) for x in h.sorted_elements()], dtype=np.int64)
    return rank_mod_p(span, spec.p) == spec.m * spec.m


def fixed_space(h: Subgroup) -> np.ndarray:
    """Basis (as rows) of the vectors fixed by every element of h"""
    spec = h.ambient
    m, p = spec.m, spec.p
    identity = np.identity(m, dtype=np.int64)
    blocks = [(as_square(g, m) - identity) % p for g in _gl_generators(h)]
    if not blocks:
        return np.identity(m, dtype=np.int64)
    return nullspace_mod_p(np.vstack(blocks), p)


def is_stable(h: Subgroup, basis: np.ndarray) -> bool:
    """Whether the row span of basis is mapped into itself by h"""
    spec = h.ambient
    if basis.shape[0] == 0:
        return True
    p = spec.p
    base_rank = rank_mod_p(basis, p)
    for g in _gl_generators(h):
        image = (as_square(g, spec.m) @ basis.T).T % p
        if rank_mod_p(np.vstack([basis, image]), p) != base_rank:
            return False
    return True


@dataclass(frozen=True)
class FixedVectorReport:
    core_order: int
    fixed_dimension: int
    stable: bool
    status: str

    @property
    def reducible(self) -> bool:
        return self.status == INVARIANT_SUBSPACE

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


def check_fixed_vector_lemma(h: Subgroup) -> FixedVectorReport:
    """
    Fixed space of the normal p-core of h, p the characteristic

    A nontrivial p-group acting in characteristic p fixes a nonzero vector,
    and the fixed space of a normal subgroup is stable under the whole group,
    so a nontrivial core yields a proper h-stable subspace whenever the core
    acts nontrivially on the GL(m) block.

    Returns:
        FixedVectorReport; status "lemma vacuous" when the core is trivial
    """
    spec = h.ambient
    core = normal_p_core(h, spec.p)
    if core.order == 1:
        return FixedVectorReport(1, spec.m, True, LEMMA_VACUOUS)
    basis = fixed_space(core)
    dimension = int(basis.shape[0])
    stable = is_stable(h, basis)
    if dimension == spec.m:
        status = TRIVIAL_ACTION
    elif dimension > 0 and stable:
        status = INVARIANT_SUBSPACE
    else:
        status = VIOLATED
        logger.warning(f"Fixed-vector check failed in {spec.label}: core {core.order}, dim {dimension}")
    return FixedVectorReport(core.order, dimension, stable, status)
