"""
GL Group Module - 有限域上的矩阵群
Exhaustive finite matrix-group engine over F_p
"""

from .matrices import (
    ELEMENT_CAP,
    AmbientSpec,
    MatrixModP,
    ambient_order,
    brute_force_count,
    element_orders,
    elements,
    gl,
    gl_block,
)
from .subgroup import (
    Subgroup,
    block_projection,
    closure,
    conjugate,
    cyclotomic_projection,
    element_order_counts,
    generators_of,
    identify_group,
    is_abelian,
    is_normal,
    is_subgroup_of,
    make_subgroup,
    normal_closure,
    normal_p_core,
    normal_subgroups,
    normalizer,
    surjects_onto_gl1,
    sylow,
    trivial_subgroup,
    whole_group,
)
from .search import (
    DEFAULT_SEARCH_ORDER_CAP,
    all_subgroups,
    conjugacy_class_size,
    has_element_of_order,
    subgroups_dividing_order,
    subgroups_of_order,
)
from .representation import (
    INVARIANT_SUBSPACE,
    LEMMA_VACUOUS,
    FixedVectorReport,
    check_fixed_vector_lemma,
    fixed_space,
    invariant_lines,
    is_absolutely_irreducible,
    projective_line,
)
from .constructions import (
    affine_subgroup,
    borel_subgroup,
    general_linear,
    scalar_subgroup,
    singer_cycle,
    singer_subgroup,
    special_linear,
    unipotent,
    unipotent_subgroup,
)

__all__ = [
    "ELEMENT_CAP",
    "AmbientSpec",
    "MatrixModP",
    "ambient_order",
    "brute_force_count",
    "element_orders",
    "elements",
    "gl",
    "gl_block",
    "Subgroup",
    "block_projection",
    "closure",
    "conjugate",
    "cyclotomic_projection",
    "element_order_counts",
    "generators_of",
    "identify_group",
    "is_abelian",
    "is_normal",
    "is_subgroup_of",
    "make_subgroup",
    "normal_closure",
    "normal_p_core",
    "normal_subgroups",
    "normalizer",
    "surjects_onto_gl1",
    "sylow",
    "trivial_subgroup",
    "whole_group",
    "DEFAULT_SEARCH_ORDER_CAP",
    "all_subgroups",
    "conjugacy_class_size",
    "has_element_of_order",
    "subgroups_dividing_order",
    "subgroups_of_order",
    "INVARIANT_SUBSPACE",
    "LEMMA_VACUOUS",
    "FixedVectorReport",
    "check_fixed_vector_lemma",
    "fixed_space",
    "invariant_lines",
    "is_absolutely_irreducible",
    "projective_line",
    "affine_subgroup",
    "borel_subgroup",
    "general_linear",
    "scalar_subgroup",
    "singer_cycle",
    "singer_subgroup",
    "special_linear",
    "unipotent",
    "unipotent_subgroup",
]
