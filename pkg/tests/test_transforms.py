import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from feyncat.linear import FreeModuleElement
from feyncat.transforms import (
    ORDER_SCHEMES,
    DgSpace,
    bar_construction,
    canonical_order,
    cobar_bar,
    counit,
    counit_chain_map_witness,
    d_phi1,
    feynman_transform,
    ft_differential,
    index_tree,
    ktwist_sign,
    labelled_trees,
    line_algebra,
    master_equation_check,
    maximal_chains,
    ns_ass,
    operad_by_name,
    permutation_sign,
    quadratic_terms,
    random_structure_maps,
    rank,
    stasheff_defect,
    trivial_operad,
    tree_classes,
    unital_dg_algebra,
)
from feyncat.trees import LEAF, Node


def edge_count(t):
    return 0 if t == LEAF else sum(1 + edge_count(c) for c in t.children if c != LEAF)


def inversions_sign(perm):
    inv = sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return (-1) ** inv


# signs


@given(st.permutations(list(range(6))))
def test_permutation_sign_matches_inversion_count(perm):
    assert permutation_sign(perm) == inversions_sign(perm)


def test_ktwist_sign_of_a_transposition():
    assert ktwist_sign(["a", "b", "c"], ["b", "a", "c"]) == -1
    assert ktwist_sign(["a", "b", "c"], ["b", "c", "a"]) == 1
    with pytest.raises(ValueError):
        ktwist_sign(["a"], ["b"])


# the contraction differential


@pytest.mark.parametrize("scheme", ORDER_SCHEMES)
def test_d_phi1_squares_to_zero(scheme):
    for t in tree_classes(4):
        x = FreeModuleElement.basis(t)
        assert d_phi1(d_phi1(x, scheme), scheme).is_zero()


def test_d_phi1_on_one_edge_gives_the_corolla():
    t = Node(2, (Node(2, (LEAF, LEAF)), LEAF))
    assert d_phi1(FreeModuleElement.basis(t)) == FreeModuleElement.basis(Node(3, (LEAF,) * 3))


def test_maximal_chains_are_edge_orderings():
    for t in tree_classes(4):
        assert maximal_chains(t) == math.factorial(edge_count(t))


def orientation_change(t, scheme):
    """Sign between the ``scheme`` orientation and the level orientation of ``t``."""
    it = index_tree(t)
    return ktwist_sign(canonical_order(it, scheme), canonical_order(it, "level"))


@pytest.mark.parametrize("scheme", ["preorder", "reverse"])
def test_orientation_schemes_are_coherent(scheme):
    O = ns_ass()
    for n in range(2, 6):
        for t in labelled_trees(O, n):
            expected = FreeModuleElement(
                (y, orientation_change(t, scheme) * orientation_change(y, scheme) * c)
                for y, c in ft_differential(O, t, "level").items()
            )
            assert ft_differential(O, t, scheme) == expected
            expected = FreeModuleElement(
                (y, orientation_change(t, scheme) * orientation_change(y, scheme) * c)
                for y, c in d_phi1(FreeModuleElement.basis(t), "level").items()
            )
            assert d_phi1(FreeModuleElement.basis(t), scheme) == expected


# Feynman transform, bar and cobar


def test_feynman_transform_of_ass_squares_to_zero_through_arity_six():
    assert feynman_transform(ns_ass(), 6).d_squared_witness() is None


@pytest.mark.parametrize("scheme", ORDER_SCHEMES)
def test_feynman_transform_is_a_complex_in_every_scheme(scheme):
    assert feynman_transform(ns_ass(), 5, scheme).d_squared_witness() is None


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_quadratic_term_count(n):
    # one term per pair (k, i) with k + l = n + 1 and k, l >= 2
    expected = sum(k for k in range(2, n))
    assert len(quadratic_terms(ns_ass(), n)) == expected
    assert all(edge_count(t) == 1 for t in quadratic_terms(ns_ass(), n).terms)


def test_arity_four_has_five_quadratic_terms():
    assert len(quadratic_terms(ns_ass(), 4)) == 5


def test_homology_is_concentrated_in_top_degree():
    ft = feynman_transform(ns_ass(), 6)
    for n, space in ft.spaces.items():
        ranks = space.homology_ranks()
        assert ranks == {d: int(d == n - 2) for d in range(n - 1)}
    bar = bar_construction(ns_ass(), 5)
    for n, space in bar.spaces.items():
        assert bar.d_squared_witness() is None
        assert space.homology_ranks() == {d: int(d == n - 2) for d in range(n - 1)}


def test_cobar_bar_resolves_ass():
    cb = cobar_bar(ns_ass(), 4)
    assert cb.d_squared_witness() is None
    for n, space in cb.spaces.items():
        assert space.homology_ranks() == {d: int(d == 0) for d in range(n - 1)}
    assert counit_chain_map_witness(ns_ass(), 4) is None


def test_counit_composes_cobar_corollas():
    O = ns_ass()
    t = Node((2, False), (Node((2, True), (LEAF, LEAF)), LEAF))
    assert counit(O, t) == FreeModuleElement.basis(3)
    t_inner = Node((2, False), (Node((2, False), (LEAF, LEAF)), LEAF))
    assert counit(O, t_inner).is_zero()


def test_trivial_operad_has_no_trees():
    O = trivial_operad()
    assert labelled_trees(O, 3) == []
    assert quadratic_terms(O, 3).is_zero()
    with pytest.raises(ValueError):
        operad_by_name("lie")


def test_rank_of_small_matrices():
    F = Fraction
    assert rank([[F(1), F(2)], [F(2), F(4)]]) == 1
    assert rank([[F(1), F(0)], [F(0), F(1)]]) == 2
    assert rank([]) == 0


# master equation


@pytest.mark.parametrize("c", [0, 1, -2, Fraction(1, 3)])
def test_line_algebras_satisfy_both_conditions(c):
    A, maps = line_algebra(c)
    report = master_equation_check(A, maps, 4)
    assert report.holds and report.dg_map and report.agree


def test_unital_dg_algebra_satisfies_both_conditions():
    A, maps = unital_dg_algebra()
    report = master_equation_check(A, maps, 4)
    assert report.holds and report.dg_map


def test_nonassociative_product_fails_both_conditions():
    A = DgSpace((0, 0))
    one = Fraction(1)
    maps = {2: {(0, 0): {1: one}, (0, 1): {0: one}, (1, 0): {1: one}, (1, 1): {0: one}}}
    report = master_equation_check(A, maps, 3)
    assert not report.holds and not report.dg_map and report.agree
    assert report.witness[0] == 3


def test_product_not_compatible_with_differential_fails():
    A = DgSpace((0, 1), {1: {0: Fraction(1)}})
    maps = {2: {(1, 1): {}, (0, 1): {1: Fraction(1)}}}
    report = master_equation_check(A, maps, 3)
    assert not report.holds and not report.dg_map


def test_master_equation_agrees_with_dg_map_on_random_algebras():
    rng = random.Random(2024)
    A = DgSpace((0, 0))
    holds = 0
    for _ in range(40):
        maps = random_structure_maps(A, [2], rng)
        report = master_equation_check(A, maps, 3)
        assert report.agree
        assert report.holds == (not stasheff_defect(A, maps, 3))
        holds += report.holds
    assert holds >= 1


def test_master_equation_agrees_on_random_dg_algebras_with_higher_maps():
    rng = random.Random(11)
    A = DgSpace((0, 1), {1: {0: Fraction(1)}})
    for _ in range(25):
        maps = random_structure_maps(A, [2, 3], rng)
        report = master_equation_check(A, maps, 4)
        assert report.agree
        direct = all(not stasheff_defect(A, maps, n) for n in range(1, 5))
        assert report.holds == direct


def test_wrong_degree_rejected():
    A = DgSpace((0, 1))
    with pytest.raises(ValueError):
        master_equation_check(A, {2: {(0, 0): {1: Fraction(1)}}}, 3)
    with pytest.raises(ValueError):
        master_equation_check(A, {5: {}}, 3)
