import itertools
import random

import pytest
from hypothesis import given, strategies as st

from feyncat.finsets import FiberedMap, SetCategory
from feyncat.groups import (
    MonoidTable,
    all_monoids,
    cyclic_group,
    monoids_isomorphic,
    small_groups,
    subgroups,
    symmetric_group,
)
from feyncat.ops import (
    FiniteFunctor,
    FlavorMismatch,
    assoc_operad,
    circ_i,
    com_operad,
    eval_op,
    flatten,
    frobenius_check,
    frobenius_sweep,
    free_op,
    gamma_from_circ,
    group_actions,
    group_category,
    group_set,
    induce,
    kan_structure_map,
    left_kan,
    map_labels,
    naturally_isomorphic,
    op_from_monoid,
    op_functoriality_witness,
    operad_axiom_witness,
)
from feyncat import trees
from feyncat.trees import LEAF, Node


def iso_classes(tables):
    reps = []
    for m in tables:
        if not any(monoids_isomorphic(m, r) for r in reps):
            reps.append(m)
    return reps


def brute_associative(n):
    count = 0
    for flat in itertools.product(range(n), repeat=n * n):
        m = [flat[i * n : (i + 1) * n] for i in range(n)]
        if all(m[m[a][b]][c] == m[a][m[b][c]] for a in range(n) for b in range(n) for c in range(n)):
            count += 1
    return count


# monoid tables


@pytest.mark.parametrize("n", [1, 2, 3])
def test_labelled_associative_tables_match_brute_force(n):
    assert len(all_monoids(n)) == brute_associative(n)


def test_associative_table_counts_frozen():
    assert [len(all_monoids(n)) for n in (1, 2, 3)] == [1, 8, 113]


def test_iso_class_counts():
    assert [len(iso_classes(all_monoids(n))) for n in (1, 2, 3)] == [1, 5, 24]
    assert [len(iso_classes(all_monoids(n, unital=True))) for n in (1, 2, 3)] == [1, 2, 7]


def test_unital_filter_sets_unit():
    for m in all_monoids(3, unital=True):
        assert m.unit is not None and m.find_unit() == m.unit
    assert all(m.find_unit() is None for m in all_monoids(2, unital=False))


# monoid ops


def commutative_tables(n):
    return [m for m in all_monoids(n) if m.commutative]


def test_fs_ops_functorial_on_commutative_tables():
    for n in (1, 2, 3):
        for m in commutative_tables(n):
            F = op_from_monoid(m, "FS")
            assert op_functoriality_witness(F, 3) is None


def test_fs_ops_functorial_at_size_four_sample():
    rng = random.Random(7)
    for m in rng.sample(commutative_tables(3), 6):
        assert op_functoriality_witness(op_from_monoid(m, "FS"), 4) is None


def test_ncset_ops_functorial_for_every_monoid():
    for n in (1, 2, 3):
        for m in all_monoids(n, unital=True):
            assert op_functoriality_witness(op_from_monoid(m, "NCSet"), 3) is None


def test_finset_needs_unit():
    no_unit = MonoidTable(((0, 0), (0, 0)))
    with pytest.raises(FlavorMismatch):
        op_from_monoid(no_unit, "FinSet")
    assert op_from_monoid(no_unit, "FS").unit is None


def test_noncommutative_rejected_with_witness():
    left_zero = MonoidTable(((0, 0), (1, 1)))
    with pytest.raises(FlavorMismatch) as exc:
        op_from_monoid(left_zero, "FS")
    a, b = exc.value.witness
    assert left_zero(a, b) != left_zero(b, a)
    op_from_monoid(left_zero, "FS<")


def test_nonassociative_rejected_with_witness():
    magma = MonoidTable(((1, 0), (0, 0)))
    with pytest.raises(FlavorMismatch) as exc:
        op_from_monoid(magma, "NCSet")
    a, b, c = exc.value.witness
    assert magma(magma(a, b), c) != magma(a, magma(b, c))


def test_forcing_noncommutative_table_onto_fs_breaks_functoriality():
    left_zero = MonoidTable(((0, 0), (1, 1)))
    F = op_from_monoid(left_zero, "FS<")
    F.category = SetCategory("FS")
    F.flavor = "FS"
    assert op_functoriality_witness(F, 3) is not None


@pytest.mark.parametrize("flavor", ["FS", "FinSet", "FS<", "NCSet"])
def test_eval_op_agrees_with_direct_evaluation(flavor):
    cat = SetCategory(flavor)
    for m in all_monoids(2, unital=True):
        if flavor in ("FS", "FinSet") and not m.commutative:
            continue
        F = op_from_monoid(m, flavor)
        for X in cat.objects(3):
            for Y in cat.objects(3):
                for phi in cat.hom(X, Y):
                    assert eval_op(F, phi) == F.table(phi)


def test_ncset_fold_uses_fiber_order():
    # self-maps of a two-element set under composition; not commutative
    maps = [(0, 1), (1, 0), (0, 0), (1, 1)]
    index = {m: i for i, m in enumerate(maps)}
    table = tuple(tuple(index[tuple(g[f[x]] for x in range(2))] for g in maps) for f in maps)
    M = MonoidTable(table)
    F = op_from_monoid(M, "NCSet")
    phi = FiberedMap(2, 1, (0, 0), ((1, 0),))
    assert F.direct(phi, (2, 1)) == (M(1, 2),)


UNITAL_TABLES = all_monoids(2, unital=True) + all_monoids(3, unital=True)


@given(st.integers(0, 1000))
def test_naturally_isomorphic_matches_table_isomorphism(seed):
    rng = random.Random(seed)
    a, b = rng.choice(UNITAL_TABLES), rng.choice(UNITAL_TABLES)
    Fa, Fb = op_from_monoid(a, "NCSet"), op_from_monoid(b, "NCSet")
    assert naturally_isomorphic(Fa, Fb, 2) == monoids_isomorphic(a, b)


# Kan extension and induction


def regular_set(G, H):
    position = {h: i for i, h in enumerate(H)}
    return group_set(G, len(H), lambda h, i: position[G(h, H[i])]), position


def test_left_kan_of_regular_set_has_six_elements():
    G = symmetric_group(3)
    H = sorted(next(s for s in subgroups(G) if len(s) == 2))
    regular, _ = regular_set(G, H)
    inclusion = FiniteFunctor(lambda X: "*", lambda h: h)
    result = left_kan(group_category(G, H), group_category(G), inclusion, regular, "*")
    assert len(result) == 6


def test_left_kan_of_trivial_set_is_coset_space():
    G = symmetric_group(3)
    H = sorted(next(s for s in subgroups(G) if len(s) == 2))
    trivial = group_set(G, 1, lambda h, x: 0)
    inclusion = FiniteFunctor(lambda X: "*", lambda h: h)
    assert len(left_kan(group_category(G, H), group_category(G), inclusion, trivial, "*")) == 3


def test_left_kan_action_is_a_group_action():
    G = symmetric_group(3)
    H = sorted(next(s for s in subgroups(G) if len(s) == 3))
    regular, _ = regular_set(G, H)
    C, D = group_category(G, H), group_category(G)
    inclusion = FiniteFunctor(lambda X: "*", lambda h: h)
    maps = {g: kan_structure_map(C, D, inclusion, regular, g, "*", "*") for g in range(G.order)}
    assert maps[0] == {i: i for i in maps[0]}
    for g, k in itertools.product(range(G.order), repeat=2):
        gk = maps[D.compose(g, k)]
        assert gk == {i: maps[k][maps[g][i]] for i in gk}


@pytest.mark.parametrize("name", ["Z4", "Z2xZ2", "S3"])
def test_induced_size_is_index_times_size(name):
    G = small_groups(6)[name]
    for H in subgroups(G):
        for k in (1, 2):
            for action in group_actions(G, k, sorted(H)):
                ind = induce(G, sorted(H), k, action)
                assert len(ind.points) == G.order // len(H) * k


def test_kan_agrees_with_induction():
    for G in (cyclic_group(4), symmetric_group(3)):
        for H in subgroups(G):
            H = sorted(H)
            regular, position = regular_set(G, H)
            inclusion = FiniteFunctor(lambda X: "*", lambda h: h)
            kan = left_kan(group_category(G, H), group_category(G), inclusion, regular, "*")
            action = {(h, i): position[G(h, H[i])] for h in H for i in range(len(H))}
            assert len(kan) == len(induce(G, H, len(H), action).points) == G.order


def test_frobenius_sweep_small_groups():
    cases, witness = frobenius_sweep(small_groups(4), max_points=2)
    assert witness is None and cases > 0


def test_frobenius_detects_broken_hom_count():
    G = cyclic_group(2)
    free = {(g, x): (g + x) % 2 for g in range(2) for x in range(2)}
    report = frobenius_check(G, [0], 1, {(0, 0): 0}, 2, free)
    assert report.passed and report.induced_side == report.restricted_side == 2


# operads


def ns_count(arities, n, memo=None):
    """Planar trees with ``n`` leaves and vertex arities in ``arities``."""
    memo = {} if memo is None else memo
    if n == 1:
        return 1
    if n in memo:
        return memo[n]
    total = 0
    for k in arities:
        for split in itertools.product(range(1, n), repeat=k):
            if sum(split) == n:
                prod = 1
                for s in split:
                    prod *= ns_count(arities, s, memo)
                total += prod
    memo[n] = total
    return total


def test_free_ns_counts_match_recursion():
    O = free_op("ns", {2: 1}, 6)
    assert [len(O.space(n)) for n in range(1, 6)] == [ns_count((2,), n) for n in range(1, 6)]
    assert [len(O.space(n)) for n in range(1, 6)] == [1, 1, 2, 5, 14]
    O = free_op("ns", {2: 1, 3: 1}, 6)
    assert [len(O.space(n)) for n in range(1, 6)] == [ns_count((2, 3), n) for n in range(1, 6)]
    assert [len(O.space(n)) for n in range(1, 6)] == [1, 1, 3, 10, 38]


def test_free_ns_counts_with_colours():
    O = free_op("ns", {2: 2}, 5)
    assert [len(O.space(n)) for n in range(1, 5)] == [1, 2, 8, 40]


def test_free_sym_binary_counts_are_double_factorials():
    O = free_op("sym", {2: 1}, 5)
    assert [len(O.space(n)) for n in range(1, 6)] == [1, 1, 3, 15, 105]


def test_free_op_rejects_unary_and_large_arity():
    with pytest.raises(ValueError):
        free_op("ns", {1: 1}, 3)
    O = free_op("ns", {2: 1}, 3)
    with pytest.raises(ValueError):
        O.space(4)


@pytest.mark.parametrize(
    "operad",
    [
        lambda: free_op("ns", {2: 1}, 5),
        lambda: free_op("ns", {2: 1, 3: 1}, 4),
        lambda: free_op("sym", {2: 1}, 4),
        com_operad,
        assoc_operad,
    ],
)
def test_operad_axioms(operad):
    assert operad_axiom_witness(operad(), 4) is None


def test_broken_operad_is_caught():
    O = assoc_operad()
    good = O.gamma
    O.gamma = lambda a, bs: tuple(reversed(good(a, bs))) if len(a) == 2 else good(a, bs)
    assert operad_axiom_witness(O, 3) is not None


def test_gamma_from_circ_matches_gamma():
    O = assoc_operad()
    for a in O.space(3):
        for bs in itertools.product(O.space(1), O.space(2), O.space(2)):
            assert gamma_from_circ(O, a, bs) == O.gamma(a, list(bs))


def test_circ_slot_range():
    O = com_operad()
    assert circ_i(O, 3, 2, 1) == 4
    with pytest.raises(IndexError):
        circ_i(O, 2, 2, 3)


# the free-operad monad


def eta(t):
    """Every vertex becomes a one-vertex tree of the same arity."""
    if t == LEAF:
        return LEAF
    return Node(trees.corolla(t.label, t.arity), tuple(eta(c) for c in t.children))


def shapes_up_to(n):
    return [s for k in range(1, n + 1) for s in trees.planar_trees(k, 2)]


def nested(labels_by_arity, shape, rng):
    """Label the vertices of ``shape`` with random entries of matching leaf count."""
    if shape == LEAF:
        return LEAF
    label = rng.choice(labels_by_arity[shape.arity])
    return Node(label, tuple(nested(labels_by_arity, c, rng) for c in shape.children))


def by_arity(items):
    out = {}
    for t in items:
        out.setdefault(trees.leaf_count(t), []).append(t)
    return out


@given(st.integers(0, 10_000))
def test_flatten_monad_laws(seed):
    rng = random.Random(seed)
    level1 = [trees.relabel(s, lambda _: rng.choice("ab")) for s in shapes_up_to(3) if s != LEAF]
    level2 = [nested(by_arity(level1), s, rng) for s in shapes_up_to(3) if s != LEAF]
    level2 = [t for t in level2 if t != LEAF]
    for t in level1:
        assert flatten(eta(t)) == t
        assert flatten(trees.corolla(t, trees.leaf_count(t))) == t
    for n in level2:
        assert trees.leaf_count(flatten(n)) == trees.leaf_count(n)
    shape = rng.choice([s for s in shapes_up_to(3) if s != LEAF])
    arities = by_arity(level2)
    if all(v.arity in arities for v in trees.vertices_preorder(shape)):
        level3 = nested(arities, shape, rng)
        assert flatten(map_labels(level3, flatten)) == flatten(flatten(level3))
