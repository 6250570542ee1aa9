from collections import Counter
from itertools import product

import pytest
from sympy import divisors

from core.errors import GroupError, SearchCapExceeded
from core.glgroup import (
    INVARIANT_SUBSPACE,
    LEMMA_VACUOUS,
    AmbientSpec,
    MatrixModP,
    affine_subgroup,
    all_subgroups,
    ambient_order,
    block_projection,
    borel_subgroup,
    brute_force_count,
    check_fixed_vector_lemma,
    closure,
    conjugacy_class_size,
    element_order_counts,
    elements,
    general_linear,
    gl,
    gl_block,
    has_element_of_order,
    identify_group,
    invariant_lines,
    is_absolutely_irreducible,
    is_normal,
    is_subgroup_of,
    normal_closure,
    normal_p_core,
    normal_subgroups,
    scalar_subgroup,
    singer_cycle,
    singer_subgroup,
    special_linear,
    subgroups_of_order,
    surjects_onto_gl1,
    sylow,
    unipotent_subgroup,
)


def _invertible_2x2(p: int) -> int:
    """ad - bc written out, independent of det_mod_p"""
    return sum(1 for a, b, c, d in product(range(p), repeat=4) if (a * d - b * c) % p)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_gl2_order_matches_brute_force(p: int) -> None:
    expected = _invertible_2x2(p)
    assert ambient_order(gl(2, p)) == expected
    assert brute_force_count(2, p) == expected


def test_gl3_and_block_orders() -> None:
    assert ambient_order(gl(3, 2)) == brute_force_count(3, 2) == 168
    assert ambient_order(gl_block(2, 5)) == 480 * 4
    assert gl_block(2, 5).label == "GL(2,5) x GL(1,5)"
    assert len(elements(gl_block(2, 3))) == 96


def test_ambient_rejects_bad_parameters() -> None:
    with pytest.raises(GroupError):
        AmbientSpec(6, 2)
    with pytest.raises(GroupError):
        MatrixModP(5, 2, (1, 2, 2, 4))


def test_no_element_of_order_15_in_gl25(gl25: AmbientSpec) -> None:
    found, witness = has_element_of_order(gl25, 15)
    assert not found
    assert witness is None


def test_element_of_order_24_in_gl25(gl25: AmbientSpec) -> None:
    found, witness = has_element_of_order(gl25, 24)
    assert found
    assert witness.order() == 24


def test_no_subgroup_of_order_15_in_block_ambient(block25: AmbientSpec) -> None:
    assert subgroups_of_order(block25, 15, max_order=128) == []


def test_search_cap_is_enforced(gl25: AmbientSpec) -> None:
    with pytest.raises(SearchCapExceeded):
        subgroups_of_order(gl25, 120, max_order=64)


def test_closure_cap_is_enforced() -> None:
    with pytest.raises(SearchCapExceeded):
        closure([[[0, 1], [1, 1]], [[1, 1], [0, 1]]], ambient=gl(2, 5), order_cap=50)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_singer_cycle_is_irreducible_but_not_absolutely(p: int) -> None:
    cycle = singer_cycle(p)
    assert cycle.order() == p * p - 1
    h = singer_subgroup(p)
    assert h.order == p * p - 1
    assert invariant_lines(h) == []
    assert not is_absolutely_irreducible(h)


def test_named_subgroups_of_gl25(gl25: AmbientSpec) -> None:
    assert unipotent_subgroup(gl25).order == 5
    assert borel_subgroup(gl25).order == 80
    assert affine_subgroup(gl25).order == 20
    assert special_linear(gl25).order == 120
    assert scalar_subgroup(gl25).order == 4
    assert general_linear(2, 5).order == 480
    assert is_absolutely_irreducible(special_linear(gl25))


def test_borel_in_block_ambient_surjects_onto_gl1(block25: AmbientSpec) -> None:
    borel = borel_subgroup(block25)
    assert borel.order == 80 * 4
    assert surjects_onto_gl1(borel)
    assert block_projection(borel).order == 80
    assert not surjects_onto_gl1(unipotent_subgroup(block25))


def test_sylow_and_normal_core(gl25: AmbientSpec) -> None:
    borel = borel_subgroup(gl25)
    p_sylow = sylow(borel, 5)
    assert p_sylow.order == 5
    assert is_normal(borel, p_sylow)
    assert normal_p_core(borel, 5) == p_sylow
    assert normal_p_core(general_linear(2, 5), 5).order == 1
    with pytest.raises(GroupError):
        sylow(borel, 3)


def test_identify_small_groups(gl23: AmbientSpec) -> None:
    (sl23,) = subgroups_of_order(gl23, 24)
    assert identify_group(sl23) == "SL(2,3)"
    assert identify_group(unipotent_subgroup(gl23)) == "C_3"
    assert identify_group(affine_subgroup(gl23)) == "S_3"
    assert identify_group(affine_subgroup(gl(2, 5))) == "F_20"
    assert identify_group(singer_subgroup(3)) == "C_8"


def test_sylow_two_subgroups_of_gl23_form_one_class_of_three(gl23: AmbientSpec) -> None:
    (p_sylow,) = subgroups_of_order(gl23, 16)
    assert conjugacy_class_size(p_sylow) == 3


@pytest.mark.slow
def test_class_search_matches_full_enumeration_in_gl23(gl23: AmbientSpec) -> None:
    every = Counter(h.order for h in all_subgroups(gl23))
    for n in divisors(48):
        classes = subgroups_of_order(gl23, n)
        assert sum(conjugacy_class_size(h) for h in classes) == every[n], n
        assert len({h.key() for h in classes}) == len(classes)


def test_seeded_search_contains_seed(gl25: AmbientSpec) -> None:
    seed = unipotent_subgroup(gl25)
    found = subgroups_of_order(gl25, 20, containing=seed)
    assert found
    for h in found:
        assert seed.elements <= h.elements


def test_fixed_vector_lemma_on_every_order_20_subgroup(gl25: AmbientSpec) -> None:
    found = subgroups_of_order(gl25, 20)
    checked = 0
    for h in found:
        if normal_p_core(h, 5).order == 1:
            continue
        report = check_fixed_vector_lemma(h)
        assert report.status == INVARIANT_SUBSPACE, identify_group(h)
        assert report.fixed_dimension == 1
        assert invariant_lines(h)
        checked += 1
    assert checked >= 1


def test_fixed_vector_lemma_is_vacuous_without_p_core(gl25: AmbientSpec) -> None:
    report = check_fixed_vector_lemma(scalar_subgroup(gl25))
    assert report.status == LEMMA_VACUOUS
    assert report.core_order == 1


def test_element_order_statistics_of_gl23(gl23: AmbientSpec) -> None:
    counts = element_order_counts(general_linear(2, 3))
    assert counts == {1: 1, 2: 13, 3: 8, 4: 6, 6: 8, 8: 12}


def test_normal_subgroups_of_gl23(gl23: AmbientSpec) -> None:
    whole = general_linear(2, 3)
    normals = normal_subgroups(whole)
    assert [h.order for h in normals] == [1, 2, 8, 24, 48]
    assert all(is_normal(whole, h) and is_subgroup_of(h, whole) for h in normals)
    assert identify_group(normals[3]) == "SL(2,3)"


def test_normal_closure(gl23: AmbientSpec) -> None:
    whole = general_linear(2, 3)
    centre = normal_closure(whole, scalar_subgroup(gl23).elements)
    assert centre.order == 2
    transvections = normal_closure(whole, unipotent_subgroup(gl23).elements)
    assert transvections.order == 24
    assert is_subgroup_of(centre, transvections)
    assert not is_subgroup_of(transvections, centre)
    assert not is_subgroup_of(scalar_subgroup(gl(2, 5)), whole)
