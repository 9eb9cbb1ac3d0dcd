import itertools

import pytest

from feyncat.decoration import (
    BUILTIN,
    NAMED_FUNCTORS,
    DecoratedCategory,
    NotFunctorialError,
    SetOp,
    assoc_op,
    builtin_decorations,
    check_cover,
    color_op,
    cyc_assoc_op,
    decorate,
    direction_op,
    forgetful,
    functoriality_witness,
    genus_op,
    planar_corolla_as_map,
    recovered_matches,
    trivial_op,
)
from feyncat.feynman import check_feynman_axioms
from feyncat.finsets import SetCategory, enumerate_hom


@pytest.mark.parametrize("make", [assoc_op, cyc_assoc_op])
def test_order_decorations_are_covers_recovering_the_op(make):
    dec = decorate(make(3), 3)
    report = check_cover(forgetful(dec), 3)
    assert report.is_cover, report.witness
    assert recovered_matches(dec, report)
    assert check_feynman_axioms(dec, 3).passed


def test_assoc_values_are_input_orders():
    op = assoc_op(3)
    assert op.values((3,)) == [(1, 2), (2, 1)]
    assert op.values((1,)) == [()]


def test_decorated_rooted_corollas_are_ordered_maps():
    dec = DecoratedCategory(assoc_op(3))
    corollas = [X for X in dec.objects(3) if len(X[0]) == 1]
    maps = {planar_corolla_as_map(X) for X in corollas}
    expected = {phi for n in range(3) for phi in enumerate_hom("NCSet", n, 1)}
    assert maps == expected


def test_genus_is_a_cover_from_genus_zero_sources():
    dec = decorate(genus_op(1, 2), 3)
    sources = [X for X in dec.objects(3) if all(g == 0 for g in X[1])]
    report = check_cover(forgetful(dec), 3, sources)
    assert report.is_cover, report.witness
    assert recovered_matches(dec, report)


def test_genus_truncation_blocks_lifts_from_the_top_label():
    dec = decorate(genus_op(1, 2), 3)
    report = check_cover(forgetful(dec), 3)
    assert not report.is_cover
    assert "no lift" in report.witness


@pytest.mark.parametrize("make", [lambda: direction_op(2), lambda: color_op((0, 1), 2)])
def test_gluing_conditions_cut_out_wide_subcategories(make):
    dec = decorate(make(), 3)
    report = check_cover(forgetful(dec), 3)
    assert not report.is_cover
    assert "no lift" in report.witness


def test_unrestricted_direction_is_a_cover():
    dec = decorate(direction_op(2, restricted=False), 3)
    report = check_cover(forgetful(dec), 3)
    assert report.is_cover and recovered_matches(dec, report)


def test_trivial_decoration_changes_nothing():
    base = SetCategory("FS")
    dec = decorate(trivial_op(base), 3)
    for X, Y in itertools.product(range(4), repeat=2):
        assert len(dec.hom((X, ((),) * X), (Y, ((),) * Y))) == len(base.hom(X, Y))


def test_non_functorial_op_is_rejected_with_a_witness():
    base = SetCategory("FS")
    # parity of the fiber size: 2 -> 1 -> 1 and 2 -> 1 agree, but 3 -> 2 -> 1 does not
    op = SetOp("parity", base, lambda b: [0, 1], lambda piece, block: piece.source % 2)
    assert functoriality_witness(op, 3) is not None
    with pytest.raises(NotFunctorialError) as info:
        decorate(op, 3)
    assert info.value.witness


def test_builtin_registry():
    assert set(BUILTIN) == {"Assoc", "CycAssoc", "Direction", "Genus", "Color"}
    assert builtin_decorations("Assoc").name == "Assoc"
    with pytest.raises(KeyError):
        builtin_decorations("Ribbon")


@pytest.mark.parametrize(
    "name, expected",
    [
        ("NCSet->FinSet", True),
        ("planar->rooted", True),
        ("NCSet->FinSet:objects", False),
        ("FS->FinSet", False),
        ("OS->FS", False),
    ],
)
def test_named_functors(name, expected):
    assert check_cover(NAMED_FUNCTORS[name](), 3).is_cover is expected
