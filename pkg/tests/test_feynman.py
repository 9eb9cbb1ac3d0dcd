import itertools

import pytest

from feyncat.aggregates import (
    Aggregate,
    GraphCategory,
    RootedCorollaCategory,
    decompose,
    enumerate_basic_morphisms,
    planar_compatible,
    recompose,
    tree_tail_cycle,
)
from feyncat.feynman import check_feynman_axioms
from feyncat.finsets import FiberedMap, LabeledInjectionCategory, SetCategory
from feyncat.graphs import Graph, GraphMorphism, aggregate, all_morphisms, corolla, ghost_graph
from feyncat.groups import cyclic_group


@pytest.mark.parametrize("tag", ["FinSet", "FS", "FI", "NCSet", "FS<", "Δ₊", "OS", "OI", "Δ₊S"])
def test_set_categories_are_feynman(tag):
    report = check_feynman_axioms(SetCategory(tag), 3)
    assert report.passed, report.witness
    assert report.counts["morphisms"] > 0


@pytest.mark.parametrize("constraint", ["any", "connected", "tree", "forest"])
def test_graph_categories_are_feynman(constraint):
    report = check_feynman_axioms(GraphCategory(2, constraint), 3)
    assert report.passed, report.witness


def test_rooted_corollas_and_labeled_injections():
    for cat in (RootedCorollaCategory(3), LabeledInjectionCategory(group=cyclic_group(2)), LabeledInjectionCategory(d=2)):
        report = check_feynman_axioms(cat, 3)
        assert report.passed, (cat.name, report.witness)


def test_missing_symmetries_are_detected():
    cat = SetCategory("FinSet")
    cat.symmetric = False
    report = check_feynman_axioms(cat, 3)
    assert not report.passed
    assert "not generated" in report.witness


def test_missing_basic_isos_are_detected():
    cat = SetCategory("FS")
    cat.v_isos = lambda a, b: []
    assert not check_feynman_axioms(cat, 2).passed


def test_wrong_decomposition_is_detected():
    cat = SetCategory("FinSet")
    honest = cat.decompose

    def shuffled(f):
        sigma, pieces = honest(f)
        return sigma, pieces[::-1]

    cat.decompose = shuffled
    report = check_feynman_axioms(cat, 3)
    assert not report.passed
    assert "decomposition" in report.witness


def test_decompose_recompose_round_trip():
    for phi in all_morphisms(aggregate([2, 1, 1]), aggregate([2, 0])):
        pieces = decompose(phi)
        assert set(pieces) == {0, 1}
        assert recompose(pieces) == phi


def test_aggregate_of_graph():
    agg = Aggregate.of(aggregate([2, 0, 1]))
    assert [len(c.flags) for c in agg.corollas] == [2, 0, 1]
    assert agg.graph() == aggregate([2, 0, 1])
    with pytest.raises(ValueError):
        Aggregate.of(Graph([0], {0: 0, 1: 0}, {0: 1, 1: 0}))


def test_basic_morphisms_with_tree_ghosts():
    # a 2-corolla and a 1-corolla onto a 1-corolla: pair two of the three flags
    basics = enumerate_basic_morphisms(aggregate([2, 1]), aggregate([1]), "tree")
    assert len(basics.raw) == 2
    assert len(basics.representatives) == 1
    everything = enumerate_basic_morphisms(aggregate([2, 1]), aggregate([1]))
    # keeping the lone flag leaves a loop: a second class
    assert len(everything.representatives) == 2


def _two_corollas_glued(image):
    # flags 0,1,2 at vertex 0 and 3,4,5 at vertex 1; edge {2,3}; target flags 10..13
    g = aggregate([3, 3])
    h = corolla([10, 11, 12, 13])
    return GraphMorphism(g, h, dict(zip([10, 11, 12, 13], image)), {0: 0, 1: 0}, {2: 3, 3: 2})


def test_planar_compatibility_selects_the_cyclic_rotations():
    cyclic = {0: (0, 1, 2), 1: (3, 4, 5)}
    tree = ghost_graph(_two_corollas_glued((0, 1, 4, 5)))
    assert tree_tail_cycle(tree, cyclic) == [0, 1, 4, 5]
    compatible = [
        image
        for image in itertools.permutations((0, 1, 4, 5))
        if planar_compatible(_two_corollas_glued(image), cyclic, {0: (10, 11, 12, 13)})
    ]
    assert len(compatible) == 4
    assert (4, 5, 0, 1) in compatible
    assert (1, 0, 4, 5) not in compatible
