import itertools
import random

import pytest
from hypothesis import given, strategies as st

from feyncat.finsets import FiberedMap, SetCategory, compose_maps, hom_count, tensor_maps
from feyncat.plus import (
    ForestError,
    HypForm,
    PlusBase,
    TreeNode,
    automorphism_permutations,
    automorphisms,
    black,
    compose_forests,
    enumerate_forests,
    equiv_check,
    flow_chart_eval,
    flow_value,
    forest_to_ordered_map,
    hom,
    identity_forest,
    linear_forest_from_heights,
    make_forest,
    normalize_gcp,
    normalize_hyp,
    objects,
    on_target_inputs,
    ordered_map_to_forest,
    relabel_source,
    round_trip_ncset,
    tensor_forests,
    terminal_forms,
    tree_leaves,
    unit_rewrites,
)

TRIVIAL = PlusBase("trivial")
UNIT = TRIVIAL.unit_color


def trivial_forests(max_vertices):
    for n in range(max_vertices + 1):
        for m in range(max_vertices + 1):
            yield from enumerate_forests(TRIVIAL, (UNIT,) * n, (UNIT,) * m)


def insert_black(node, path):
    """Put a black vertex above the child reached by ``path`` (or at the root for ``()``)."""
    if not path:
        return black(node)
    i, rest = path[0], path[1:]
    kids = list(node.children)
    kids[i] = insert_black(kids[i], rest)
    return TreeNode(node.vertex, tuple(kids))


def paths(node, prefix=()):
    yield prefix
    if isinstance(node, int):
        return
    for i, c in enumerate(node.children):
        yield from paths(c, prefix + (i,))


# the base categories


@pytest.mark.parametrize("name", ["FS", "FinSet", "NCSet", "FS<"])
def test_colors_are_basic_maps(name):
    base = PlusBase(name)
    cat = SetCategory(name)
    for k in range(4):
        cols = base.colors(k)
        assert len(cols) == len(cat.hom(k, 1))


def test_unknown_base_rejected():
    with pytest.raises(ValueError):
        PlusBase("Vect")


# evaluation


@pytest.mark.parametrize("name", ["FinSet", "NCSet"])
def test_flow_chart_and_recursive_evaluation_agree(name):
    base = PlusBase(name)
    for X in objects(base, 3, 3):
        for Y in objects(base, 1, 3):
            for f in enumerate_forests(base, X, Y):
                for t in f.trees:
                    assert flow_chart_eval(base, f.source, t) == flow_value(base, f.source, t)


def test_leveling_invariance_under_black_insertion():
    base = PlusBase("NCSet")
    for X in objects(base, 3, 3):
        for Y in objects(base, 1, 3):
            for f in enumerate_forests(base, X, Y):
                for t in f.trees:
                    value = flow_chart_eval(base, f.source, t)
                    for p in paths(t):
                        padded = insert_black(t, p)
                        assert flow_chart_eval(base, f.source, padded) == value


def test_flow_functoriality_on_ncset_forests():
    base = PlusBase("NCSet")
    objs = [X for X in objects(base, 2, 3) if sum(c.source for c in X) <= 2]
    checked = 0
    for X, Y, Z in itertools.product(objs, repeat=3):
        for a in enumerate_forests(base, X, Y):
            for b in enumerate_forests(base, Y, Z):
                c = compose_forests(a, b)
                for w, t in enumerate(c.trees):
                    direct = on_target_inputs(flow_value(base, c.source, t), tree_leaves(t))
                    assert direct == Z[w]
                checked += 1
    assert checked > 50


# composition


def test_identity_forest_is_a_unit():
    for f in trivial_forests(3):
        assert compose_forests(identity_forest(TRIVIAL, f.source), f) == f
        assert compose_forests(f, identity_forest(TRIVIAL, f.target)) == f


@pytest.mark.parametrize("p,q", [(1, 1), (2, 1), (2, 3)])
def test_linear_trees_compose_by_grafting(p, q):
    chain_p = linear_forest_from_heights([list(range(1, p + 1))], p)
    a = tensor_forests(chain_p, identity_forest(TRIVIAL, (UNIT,) * q))
    b = linear_forest_from_heights([list(range(1, q + 2))], q + 1)
    c = compose_forests(a, b)
    assert len(c.trees) == 1
    assert len(list(_chain(c.trees[0]))) == p + q


def _chain(node):
    while not isinstance(node, int):
        if not node.is_black:
            yield node.vertex
        node = node.children[0]


def test_composition_associative_over_trivial_base():
    by_shape = {}
    for f in trivial_forests(3):
        by_shape.setdefault(len(f.source), []).append(f)
    count = 0
    for a in (f for fs in by_shape.values() for f in fs):
        for b in by_shape.get(len(a.target), []):
            for c in by_shape.get(len(b.target), []):
                assert compose_forests(compose_forests(a, b), c) == compose_forests(a, compose_forests(b, c))
                count += 1
    assert count > 100


def test_composition_matches_ordered_maps():
    for a in trivial_forests(3):
        for b in enumerate_forests(TRIVIAL, a.target, (UNIT,) * 2):
            c = compose_forests(a, b)
            fa, fb = forest_to_ordered_map(a), forest_to_ordered_map(b)
            assert forest_to_ordered_map(c) == compose_maps(fa, fb)


def test_composability_checked():
    a = identity_forest(TRIVIAL, (UNIT,))
    b = identity_forest(TRIVIAL, (UNIT, UNIT))
    with pytest.raises(ForestError):
        compose_forests(a, b)


def test_tensor_is_juxtaposition():
    a = linear_forest_from_heights([[1, 2]], 2)
    b = linear_forest_from_heights([[1], []], 1)
    t = tensor_forests(a, b)
    assert forest_to_ordered_map(t) == tensor_maps([forest_to_ordered_map(a), forest_to_ordered_map(b)])


def test_invalid_forests_rejected():
    with pytest.raises(ForestError):
        make_forest(TRIVIAL, (UNIT, UNIT), (UNIT,), [TreeNode(0, (0,))])
    with pytest.raises(ForestError):
        make_forest(TRIVIAL, (UNIT,), (UNIT,), [TreeNode(0, (0, 1))])


# normal forms


def test_black_below_colored_vertex_is_absorbed():
    f = make_forest(TRIVIAL, (UNIT,), (UNIT,), [black(TreeNode(0, (0,)))])
    assert normalize_gcp(f) == identity_forest(TRIVIAL, (UNIT,))


def test_padded_linear_forest_normalizes_to_its_fiber_ordered_map():
    # fibers 2<1<5, empty, 3<6, 8, 7<4 over 8 -> 5
    fibers = [[2, 1, 5], [], [3, 6], [8], [7, 4]]
    forest = linear_forest_from_heights(fibers, 8)
    arities = [len(list(_chain(t))) for t in forest.trees]
    assert arities == [3, 0, 2, 1, 2]
    f = (0, 0, 2, 4, 0, 2, 4, 3)
    orders = ((1, 0, 4), (), (2, 5), (7,), (6, 3))
    expected = FiberedMap(8, 5, f, orders)
    padded = ordered_map_to_forest(expected, pad_units=True)
    assert forest_to_ordered_map(normalize_gcp(padded)) == expected
    assert normalize_gcp(padded) == forest


def test_normalization_idempotent_and_confluent():
    for phi_n in range(4):
        for m in range(3):
            for phi in SetCategory("NCSet").hom(phi_n, m):
                padded = ordered_map_to_forest(phi, pad_units=True)
                nf = normalize_gcp(padded)
                assert normalize_gcp(nf) == nf
                assert terminal_forms(padded) == {nf}
                assert unit_rewrites(nf) == []


@given(st.integers(0, 10_000))
def test_random_black_insertions_have_unique_normal_form(seed):
    rng = random.Random(seed)
    forests = list(trivial_forests(3))
    f = normalize_gcp(rng.choice(forests))
    trees = list(f.trees)
    for _ in range(rng.randint(1, 3)):
        w = rng.randrange(len(trees)) if trees else None
        if w is None:
            break
        ps = list(paths(trees[w]))
        trees[w] = insert_black(trees[w], rng.choice(ps))
    g = make_forest(TRIVIAL, f.source, f.target, trees)
    assert terminal_forms(g) == {normalize_gcp(g)} == {f}


@given(st.integers(0, 10_000))
def test_normal_form_equivariant_under_relabeling(seed):
    rng = random.Random(seed)
    f = rng.choice(list(trivial_forests(3)))
    perm = list(range(len(f.source)))
    rng.shuffle(perm)
    assert normalize_gcp(relabel_source(f, perm)) == relabel_source(normalize_gcp(f), perm)


def test_hyp_collapses_trivial_homs():
    for n in range(4):
        for m in range(4):
            homs = hom("trivial", "hyp", n, m)
            assert len(homs) == 1 and isinstance(homs[0], HypForm)


def test_hyp_normal_form_drops_iso_vertices():
    base = PlusBase("FinSet")
    c2 = base.colors(2)[0]
    f = make_forest(base, (c2, UNIT), (c2,), [TreeNode(0, (TreeNode(1, (0,)), 1))])
    form = normalize_hyp(f)
    assert form.trees == (TreeNode(0, (0, 1)),)


# comparison with closed forms


@pytest.mark.parametrize("n,m,expected", [(3, 1, 6), (2, 2, 6), (0, 2, 1), (2, 0, 0)])
def test_trivial_gcp_counts_frozen(n, m, expected):
    assert len(hom("trivial", "gcp", n, m)) == expected


def test_trivial_gcp_counts_match_ncset():
    for n in range(5):
        for m in range(5):
            assert len(hom("trivial", "gcp", n, m)) == hom_count("NCSet", n, m)


def test_trivial_plus_counts_match_ordered_surjections():
    for n in range(5):
        for m in range(5):
            assert len(hom("trivial", "plus", n, m)) == hom_count("FS<", n, m)


@pytest.mark.parametrize("level", ["plus", "gcp", "hyp"])
def test_equiv_check_trivial(level):
    assert equiv_check(level, "trivial", 3).passed


@pytest.mark.parametrize("base", ["FinSet", "FS", "NCSet", "FS<"])
def test_equiv_check_nontrivial(base):
    report = equiv_check("plus", base, 3)
    assert report.passed, report.witness


def test_equiv_check_rejects_unsupported_level():
    with pytest.raises(ValueError):
        equiv_check("gcp", "FinSet", 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_finset_automorphisms_are_full_symmetric_group(n):
    base = PlusBase("FinSet")
    color = base.colors(n)[0]
    perms = automorphism_permutations(base, color)
    assert perms == set(itertools.permutations(range(n)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ncset_corollas_have_no_automorphisms(n):
    base = PlusBase("NCSet")
    for color in base.colors(n):
        assert len(automorphisms(base, color)) == 1


def test_round_trip_ncset_exhaustive():
    cat = SetCategory("NCSet")
    for n in range(5):
        for m in range(5):
            for phi in cat.hom(n, m):
                assert round_trip_ncset(phi)
