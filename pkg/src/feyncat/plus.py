"""Decorated forests: the graphical model of the plus construction and its unit/hyper quotients.

The supported bases have a single basic object ``1`` whose only
automorphism is the identity, so every flag color is ``1`` and the
iso-decorations on target flags and ghost edges are identities.  They are
still stored, and checked, so that composition stays literal.

A corolla of the plus construction is a basic morphism ``k -> 1`` of the
base (its color); its ``k`` inputs are in the order of the source.  A
morphism is a planar forest with one tree per target corolla.  A tree
node is a source vertex, or a black unit vertex, with one child per input:
a subtree, or a leaf naming the target input it becomes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .aggregates import RootedCorollaCategory
from .decoration import DecoratedCategory, DecoratedMorphism, assoc_op
from .finsets import (
    FiberedMap,
    compose_maps,
    from_planted_forest,
    hom_count,
    tensor_maps,
    to_planted_forest,
)
from . import graphs

BASES = ("trivial", "FS", "FinSet", "NCSet", "FS<")
LEVELS = ("plus", "gcp", "hyp")


class ForestError(ValueError):
    pass


@dataclass(frozen=True)
class PlusBase:
    """A single-color base category, described by its basic morphisms ``k -> 1``."""

    name: str

    def __post_init__(self) -> None:
        if self.name not in BASES:
            raise ValueError(f"base must be one of {BASES}")

    @property
    def ordered(self) -> bool:
        return self.name in ("NCSet", "FS<")

    def colors(self, k: int) -> list[FiberedMap]:
        if self.name == "trivial":
            return [self.unit_color] if k == 1 else []
        if k == 0 and self.name in ("FS", "FS<"):
            return []
        if self.ordered:
            return [FiberedMap(k, 1, (0,) * k, (p,)) for p in itertools.permutations(range(k))]
        return [FiberedMap(k, 1, (0,) * k)]

    @property
    def unit_color(self) -> FiberedMap:
        return FiberedMap.identity(1, self.ordered)

    def is_iso_color(self, c: FiberedMap) -> bool:
        return c.source == 1

    def identity(self, n: int) -> FiberedMap:
        return FiberedMap.identity(n, self.ordered)

    def tensor(self, maps: Sequence[FiberedMap]) -> FiberedMap:
        return tensor_maps(maps) if maps else self.identity(0)


@dataclass(frozen=True)
class DecoratedCorolla:
    """A planted planar corolla colored by a basic morphism; flag colors are all ``1``."""

    color: FiberedMap

    @property
    def arity(self) -> int:
        return self.color.source


@dataclass(frozen=True)
class TreeNode:
    """A tree vertex: ``vertex`` indexes the source, ``None`` marks a black unit vertex."""

    vertex: int | None
    children: tuple  # TreeNode or int (target input index)

    @property
    def is_black(self) -> bool:
        return self.vertex is None


def black(child) -> TreeNode:
    return TreeNode(None, (child,))


@dataclass(frozen=True)
class DecoratedForest:
    """A morphism of the plus construction between tuples of colors."""

    base: PlusBase
    source: tuple[FiberedMap, ...]
    target: tuple[FiberedMap, ...]
    trees: tuple[TreeNode, ...]
    sigma: tuple = field(default=(), compare=False)
    iota: tuple = field(default=(), compare=False)

    def __post_init__(self) -> None:
        problem = forest_violation(self)
        if problem is not None:
            raise ForestError(problem)

    @property
    def black_count(self) -> int:
        return sum(_count_black(t) for t in self.trees)


def _count_black(node) -> int:
    if isinstance(node, int):
        return 0
    return int(node.is_black) + sum(_count_black(c) for c in node.children)


def _walk(node) -> Iterator[TreeNode]:
    if isinstance(node, int):
        return
    yield node
    for c in node.children:
        yield from _walk(c)


def tree_leaves(node) -> list[int]:
    """Target input indices in planar order."""
    if isinstance(node, int):
        return [node]
    return [x for c in node.children for x in tree_leaves(c)]


def _color(forest_source: Sequence[FiberedMap], base: PlusBase, node: TreeNode) -> FiberedMap:
    return base.unit_color if node.is_black else forest_source[node.vertex]


def flow_value(base: PlusBase, source: Sequence[FiberedMap], node) -> FiberedMap:
    """Recursive evaluation: the value on the leaves of ``node`` in planar order."""
    if isinstance(node, int):
        return base.identity(1)
    inner = base.tensor([flow_value(base, source, c) for c in node.children])
    return compose_maps(inner, _color(source, base, node))


def flow_chart_eval(base: PlusBase, source: Sequence[FiberedMap], node) -> FiberedMap:
    """Level-by-level evaluation with identities padding the leaves below the top level.

    Level ``d`` lists the vertices at depth ``d`` together with the leaf
    wires that end higher up; each level contributes the tensor product of
    its vertex colors and identities, and the levels compose bottom-up.
    """
    if isinstance(node, int):
        return base.identity(1)
    levels: list[list] = []
    items: list = [node]
    while any(not isinstance(x, int) for x in items):
        levels.append(items)
        nxt = []
        for x in items:
            if isinstance(x, int):
                nxt.append(x)
            else:
                nxt.extend(x.children)
        items = nxt
    value = base.identity(len(items))
    for level in reversed(levels):
        slice_ = base.tensor(
            [base.identity(1) if isinstance(x, int) else _color(source, base, x) for x in level]
        )
        value = compose_maps(value, slice_)
    return value


def on_target_inputs(value: FiberedMap, leaves: Sequence[int]) -> FiberedMap:
    """Transport a value on planar leaves to the target corolla's inputs."""
    k = len(leaves)
    if value.orders is None:
        return FiberedMap(k, 1, (0,) * k)
    return FiberedMap(k, 1, (0,) * k, (tuple(leaves[p] for p in value.orders[0]),))


def forest_violation(f: DecoratedForest) -> str | None:
    base = f.base
    if len(f.trees) != len(f.target):
        return "one tree per target corolla is required"
    for c in (*f.source, *f.target):
        if c not in base.colors(c.source):
            return f"{c!r} is not a basic morphism of {base.name}"
    seen: list[int] = []
    for w, tree in enumerate(f.trees):
        if isinstance(tree, int):
            return "a tree needs at least one vertex"
        for node in _walk(tree):
            arity = 1 if node.is_black else f.source[node.vertex].source
            if len(node.children) != arity:
                return f"vertex {node.vertex} has {len(node.children)} children, arity {arity}"
            if not node.is_black:
                seen.append(node.vertex)
        leaves = tree_leaves(tree)
        if sorted(leaves) != list(range(f.target[w].source)):
            return f"leaves of tree {w} do not match the target inputs"
        value = on_target_inputs(flow_value(base, f.source, tree), leaves)
        if value != f.target[w]:
            return f"tree {w} evaluates to {value!r}, not the target color"
    if sorted(seen) != list(range(len(f.source))):
        return "every source vertex must appear exactly once"
    for s in (*f.sigma, *f.iota):
        if not s.is_iso():
            return "flag and edge decorations must be isomorphisms"
    return None


def make_forest(base: PlusBase, source, target, trees) -> DecoratedForest:
    """Build a forest with identity decorations on target flags and ghost edges."""
    n_edges = sum(max(sum(1 for n in _walk(t)) - 1, 0) for t in trees)
    sigma = tuple(base.identity(1) for c in target for _ in range(c.source))
    iota = tuple(base.identity(1) for _ in range(n_edges))
    return DecoratedForest(base, tuple(source), tuple(target), tuple(trees), sigma, iota)


def identity_forest(base: PlusBase, colors: Sequence[FiberedMap]) -> DecoratedForest:
    trees = [TreeNode(v, tuple(range(c.source))) for v, c in enumerate(colors)]
    return make_forest(base, colors, colors, trees)


def compose_forests(a: DecoratedForest, b: DecoratedForest) -> DecoratedForest:
    """First ``a``, then ``b``: each vertex of ``b`` is replaced by the tree of ``a`` above it."""
    if a.target != b.source or a.base != b.base:
        raise ForestError("forests are not composable")

    def insert(node):
        if isinstance(node, int):
            return node
        kids = tuple(insert(c) for c in node.children)
        if node.is_black:
            return TreeNode(None, kids)
        return _plug(a.trees[node.vertex], kids)

    trees = [insert(t) for t in b.trees]
    return make_forest(a.base, a.source, b.target, trees)


def _plug(node, replacements: tuple):
    if isinstance(node, int):
        return replacements[node]
    return TreeNode(node.vertex, tuple(_plug(c, replacements) for c in node.children))


def tensor_forests(a: DecoratedForest, b: DecoratedForest) -> DecoratedForest:
    shift = len(a.source)

    def move(node):
        if isinstance(node, int):
            return node
        v = None if node.is_black else node.vertex + shift
        return TreeNode(v, tuple(move(c) for c in node.children))

    trees = list(a.trees) + [move(t) for t in b.trees]
    return make_forest(a.base, a.source + b.source, a.target + b.target, trees)


def relabel_source(f: DecoratedForest, perm: Sequence[int]) -> DecoratedForest:
    """Precompose with the source symmetry moving vertex ``v`` to ``perm[v]``."""
    source = [None] * len(f.source)
    for v, c in enumerate(f.source):
        source[perm[v]] = c

    def move(node):
        if isinstance(node, int):
            return node
        v = None if node.is_black else perm[node.vertex]
        return TreeNode(v, tuple(move(c) for c in node.children))

    return make_forest(f.base, source, f.target, [move(t) for t in f.trees])


# ---------------------------------------------------------------------------
# normal forms


def _strip(node):
    """Drop black vertices next to colored ones; an all-black tree keeps one."""
    if isinstance(node, int):
        return node
    kids = tuple(_strip(c) for c in node.children)
    if node.is_black:
        return kids[0]
    return TreeNode(node.vertex, kids)


def _has_colored(node) -> bool:
    return any(not n.is_black for n in _walk(node))


def normalize_gcp(f: DecoratedForest) -> DecoratedForest:
    """Absorb black unit vertices; a tree made only of units becomes a single unit vertex."""
    trees = []
    for t in f.trees:
        if _has_colored(t):
            trees.append(_strip(t))
        else:
            trees.append(black(tree_leaves(t)[0]))
    return make_forest(f.base, f.source, f.target, trees)


def unit_rewrites(f: DecoratedForest) -> list[DecoratedForest]:
    """All results of absorbing one black vertex (one application of a unit relation)."""
    out = []
    for w, t in enumerate(f.trees):
        for new in _one_step(t, is_root=True):
            trees = list(f.trees)
            trees[w] = new
            out.append(make_forest(f.base, f.source, f.target, trees))
    return out


def _one_step(node, is_root: bool) -> Iterator:
    if isinstance(node, int):
        return
    if node.is_black:
        child = node.children[0]
        # a black vertex is absorbable unless it is the whole tree
        if not (is_root and isinstance(child, int)):
            yield child
    for i, c in enumerate(node.children):
        for new in _one_step(c, False):
            kids = list(node.children)
            kids[i] = new
            yield TreeNode(node.vertex, tuple(kids))


def terminal_forms(f: DecoratedForest) -> set[DecoratedForest]:
    """Every forest reachable by unit rewrites that admits no further rewrite."""
    seen, stack, out = {f}, [f], set()
    while stack:
        g = stack.pop()
        nxt = unit_rewrites(g)
        if not nxt:
            out.add(g)
        for h in nxt:
            if h not in seen:
                seen.add(h)
                stack.append(h)
    return out


@dataclass(frozen=True)
class HypForm:
    """Normal form in the hyper quotient: iso-colored vertices are contracted away."""

    target: tuple[FiberedMap, ...]
    trees: tuple


def normalize_hyp(f: DecoratedForest) -> HypForm:
    def strip(node):
        if isinstance(node, int):
            return node
        kids = tuple(strip(c) for c in node.children)
        if node.is_black or f.base.is_iso_color(f.source[node.vertex]):
            return kids[0]
        return TreeNode(node.vertex, kids)

    trees = []
    for t in f.trees:
        s = strip(t)
        trees.append(None if isinstance(s, int) else s)
    return HypForm(f.target, tuple(trees))


# ---------------------------------------------------------------------------
# enumeration


def _shapes(vertices: frozenset, arity: dict) -> list:
    """Planar trees using exactly ``vertices``; ``None`` marks an unlabelled leaf."""
    out = []
    for r in sorted(vertices):
        rest = sorted(vertices - {r})
        slots = arity[r]
        if rest and slots == 0:
            continue
        for assign in itertools.product(range(slots), repeat=len(rest)):
            groups = [frozenset(v for v, s in zip(rest, assign) if s == i) for i in range(slots)]
            options = [_shapes(g, arity) if g else [None] for g in groups]
            for kids in itertools.product(*options):
                out.append(TreeNode(r, tuple(kids)))
    return out


def _label_leaves(node, labels: Iterator[int]):
    if node is None:
        return next(labels)
    return TreeNode(node.vertex, tuple(_label_leaves(c, labels) for c in node.children))


def _leaf_slots(node) -> int:
    if node is None:
        return 1
    return sum(_leaf_slots(c) for c in node.children)


def _trees_onto(base: PlusBase, source, vertices: frozenset, color: FiberedMap, units: bool) -> list:
    if not vertices:
        if units and base.is_iso_color(color):
            return [black(0)]
        return []
    arity = {v: source[v].source for v in vertices}
    out = []
    for shape in _shapes(vertices, arity):
        k = _leaf_slots(shape)
        if k != color.source:
            continue
        for perm in itertools.permutations(range(k)):
            tree = _label_leaves(shape, iter(perm))
            value = on_target_inputs(flow_value(base, source, tree), tree_leaves(tree))
            if value == color:
                out.append(tree)
    return out


def enumerate_forests(base: PlusBase, source, target, level: str = "plus") -> list[DecoratedForest]:
    """All normal-form morphisms ``source -> target`` at the given level."""
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    source, target = tuple(source), tuple(target)
    if level == "hyp":
        return _enumerate_hyp(base, source, target)
    units = level == "gcp"
    out = []
    for assign in itertools.product(range(len(target)), repeat=len(source)):
        per = [frozenset(v for v, w in enumerate(assign) if w == t) for t in range(len(target))]
        options = [_trees_onto(base, source, per[t], target[t], units) for t in range(len(target))]
        for trees in itertools.product(*options):
            out.append(make_forest(base, source, target, trees))
    return out


def _enumerate_hyp(base: PlusBase, source, target) -> list[HypForm]:
    keep = [v for v, c in enumerate(source) if not base.is_iso_color(c)]
    reduced = tuple(source[v] for v in keep)
    forms = set()
    for f in enumerate_forests(base, reduced, target, "gcp"):
        form = normalize_hyp(f)
        forms.add(HypForm(form.target, tuple(_rename(t, keep) for t in form.trees)))
    return sorted(forms, key=repr)


def _rename(node, keep: Sequence[int]):
    if node is None or isinstance(node, int):
        return node
    return TreeNode(keep[node.vertex], tuple(_rename(c, keep) for c in node.children))


def hom(base_name: str, level: str, n: int, m: int) -> list:
    """Morphisms between tensor powers of the unit-colored corolla (``n`` and ``m`` copies)."""
    base = PlusBase(base_name)
    unit = base.unit_color
    return enumerate_forests(base, (unit,) * n, (unit,) * m, level)


def objects(base: PlusBase, max_vertices: int, max_inputs: int) -> list[tuple[FiberedMap, ...]]:
    """Tuples of colors with at most ``max_vertices`` corollas and ``max_inputs`` inputs in total."""
    out = []
    for k in range(max_vertices + 1):
        for arities in itertools.product(range(max_inputs + 1), repeat=k):
            if sum(arities) > max_inputs:
                continue
            for colors in itertools.product(*(base.colors(a) for a in arities)):
                out.append(tuple(colors))
    return out


# ---------------------------------------------------------------------------
# comparison functors


def forest_to_ordered_map(f: DecoratedForest) -> FiberedMap:
    """Linear forests over the trivial base: vertex ``v`` lies over its tree, ordered from the root up."""
    if f.base.name != "trivial":
        raise ForestError("only linear forests over the trivial base")
    n, m = len(f.source), len(f.target)
    images = [0] * n
    orders = []
    for w, t in enumerate(f.trees):
        chain = []
        node = t
        while not isinstance(node, int):
            if not node.is_black:
                chain.append(node.vertex)
                images[node.vertex] = w
            node = node.children[0]
        orders.append(tuple(chain))
    return FiberedMap(n, m, tuple(images), tuple(orders))


def ordered_map_to_forest(phi: FiberedMap, pad_units: bool = False) -> DecoratedForest:
    """The marked linear forest of an ordered-fiber map; empty fibers become unit trees.

    ``pad_units`` caps every chain with a redundant black vertex, which
    normalization must absorb.
    """
    base = PlusBase("trivial")
    unit = base.unit_color
    trees = []
    for t in range(phi.target):
        node = 0
        if pad_units or not phi.orders[t]:
            node = black(node)
        for v in reversed(phi.orders[t]):
            node = TreeNode(v, (node,))
        trees.append(node)
    return make_forest(base, (unit,) * phi.source, (unit,) * phi.target, trees)


def linear_forest_from_heights(fibers: Sequence[Sequence[int]], n: int) -> DecoratedForest:
    """Linear trees listing 1-based source vertices from the root up; an empty list is a unit tree."""
    orders = tuple(tuple(v - 1 for v in fib) for fib in fibers)
    f = [0] * n
    for t, fib in enumerate(orders):
        for v in fib:
            f[v] = t
    return ordered_map_to_forest(FiberedMap(n, len(fibers), tuple(f), orders))


def forest_to_graph_morphism(f: DecoratedForest) -> graphs.GraphMorphism:
    """Read a forest without unit vertices as a morphism of rooted corollas (first flag = root)."""
    cat = RootedCorollaCategory(max(len(f.source), 1))
    X = tuple(c.source + 1 for c in f.source)
    Y = tuple(c.source + 1 for c in f.target)
    G, H = cat.graph(X), cat.graph(Y)
    flag_inj, vmap, ghost = {}, {}, {}
    for w, t in enumerate(f.trees):
        tflags = H.flags_at(w)
        root = t
        if root.is_black:
            raise ForestError("unit vertices have no graph counterpart")
        flag_inj[tflags[0]] = G.flags_at(root.vertex)[0]
        for node in _walk(t):
            if node.is_black:
                raise ForestError("unit vertices have no graph counterpart")
            vmap[node.vertex] = w
            sflags = G.flags_at(node.vertex)
            for i, c in enumerate(node.children):
                if isinstance(c, int):
                    flag_inj[tflags[c + 1]] = sflags[i + 1]
                else:
                    child_root = G.flags_at(c.vertex)[0]
                    ghost[sflags[i + 1]] = child_root
                    ghost[child_root] = sflags[i + 1]
    return graphs.GraphMorphism(G, H, flag_inj, vmap, ghost)


def forest_to_planar_morphism(f: DecoratedForest, dec: DecoratedCategory) -> DecoratedMorphism:
    """Ordered base: the same graph morphism, decorated by the input orders of the colors."""
    m = forest_to_graph_morphism(f)

    def deco(colors):
        return tuple(tuple(i + 1 for i in c.orders[0]) for c in colors)

    X = tuple(c.source + 1 for c in f.source)
    Y = tuple(c.source + 1 for c in f.target)
    return DecoratedMorphism(m, (X, deco(f.source)), (Y, deco(f.target)))


@dataclass
class EquivReport:
    level: str
    base: str
    bound: int
    passed: bool
    counts: dict = field(default_factory=dict)
    witness: str | None = None

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" witness: {self.witness}" if self.witness else ""
        return f"{self.base}^{self.level} (bound {self.bound}): {status}{extra}"


def equiv_check(level: str, base_name: str, bound: int = 4) -> EquivReport:
    """Compare the plus-construction level with its closed form on hom-sets up to ``bound``.

    trivial: plus ~ ordered surjections, gcp ~ ordered-fiber maps, hyp ~ one
    morphism everywhere.  FinSet/FS plus ~ rooted-tree morphisms of rooted
    corollas; NCSet/FS< plus ~ the same decorated by input orders.
    """
    base = PlusBase(base_name)
    report = EquivReport(level, base_name, bound, True)

    def fail(msg: str) -> EquivReport:
        report.passed = False
        report.witness = msg
        return report

    if base_name == "trivial":
        unit = base.unit_color
        closed = {"plus": "FS<", "gcp": "NCSet"}
        for n in range(bound + 1):
            for m in range(bound + 1):
                homs = enumerate_forests(base, (unit,) * n, (unit,) * m, level)
                if level == "hyp":
                    if len(homs) != 1:
                        return fail(f"hyp hom {n}->{m} has {len(homs)} elements")
                    report.counts[n, m] = 1
                    continue
                images = {forest_to_ordered_map(f) for f in homs}
                expected = hom_count(closed[level], n, m)
                report.counts[n, m] = len(homs)
                if len(images) != len(homs) or len(homs) != expected:
                    return fail(f"{n}->{m}: {len(homs)} forests, {len(images)} images, {expected} expected")
        return report

    if level != "plus":
        raise ValueError("only the plus level is compared for non-trivial bases")
    cat = RootedCorollaCategory(bound)
    dec = DecoratedCategory(assoc_op(bound)) if base.ordered else None
    min_inputs = 1 if base_name in ("FS", "FS<") else 0
    objs = [X for X in objects(base, bound, bound) if len(X) + sum(c.source for c in X) <= bound + 1]
    for X in objs:
        for Y in objs:
            homs = enumerate_forests(base, X, Y, "plus")
            gx = tuple(c.source + 1 for c in X)
            gy = tuple(c.source + 1 for c in Y)
            if base.ordered:
                images = {forest_to_planar_morphism(f, dec) for f in homs}
                sx = (gx, tuple(tuple(i + 1 for i in c.orders[0]) for c in X))
                sy = (gy, tuple(tuple(i + 1 for i in c.orders[0]) for c in Y))
                expected = set(dec.hom(sx, sy))
            else:
                images = {forest_to_graph_morphism(f) for f in homs}
                expected = {
                    m for m in cat.hom(gx, gy)
                    if all(a - 1 >= min_inputs for a in gx + gy)
                }
            report.counts[X, Y] = len(homs)
            if len(images) != len(homs) or images != expected:
                return fail(f"{gx}->{gy}: {len(homs)} forests, {len(expected)} graph morphisms")
    return report


def automorphisms(base: PlusBase, color: FiberedMap) -> list[DecoratedForest]:
    """Automorphisms of the one-corolla object colored by ``color``."""
    return enumerate_forests(base, (color,), (color,))


def automorphism_permutations(base: PlusBase, color: FiberedMap) -> set[tuple[int, ...]]:
    """Each automorphism as the permutation of inputs it induces (input ``i`` goes to leaf label)."""
    return {tuple(tree_leaves(f.trees[0])) for f in automorphisms(base, color)}


def round_trip_ncset(phi: FiberedMap) -> bool:
    """NCSet map -> padded linear forest -> unit normal form -> NCSet map -> planted forest."""
    forest = normalize_gcp(ordered_map_to_forest(phi, pad_units=True))
    back = forest_to_ordered_map(forest)
    return back == phi and from_planted_forest(to_planted_forest(back)) == phi
