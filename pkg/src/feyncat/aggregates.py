"""The graph Feynman category: corollas, aggregates of corollas, basic morphisms.

Objects of the bounded model are arity tuples ``(a_0, ..., a_{k-1})`` standing
for the skeletal aggregate built by :func:`feyncat.graphs.aggregate`.  The
basic objects are the one-entry tuples (single corollas).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from . import graphs
from .feynman import FeynmanModel
from .graphs import Graph, GraphMorphism


@dataclass(frozen=True)
class Corolla:
    vertex: int
    flags: frozenset[int]

    def graph(self) -> Graph:
        return graphs.corolla(self.flags, self.vertex)


@dataclass(frozen=True)
class Aggregate:
    """An ordered list of corollas with pairwise disjoint ids."""

    corollas: tuple[Corolla, ...]

    def graph(self) -> Graph:
        boundary = {f: c.vertex for c in self.corollas for f in c.flags}
        return Graph((c.vertex for c in self.corollas), boundary)

    @classmethod
    def of(cls, g: Graph) -> Aggregate:
        if not g.is_aggregate():
            raise ValueError("graph has edges; not an aggregate")
        return cls(tuple(Corolla(v, frozenset(g.flags_at(v))) for v in sorted(g.vertices)))


def decompose(phi: GraphMorphism) -> dict[int, GraphMorphism]:
    """Split an aggregate morphism into one basic morphism per target vertex.

    The piece over ``w`` keeps the original ids: its source is the
    sub-aggregate on ``phi_V^{-1}(w)`` and its target the corolla at ``w``.
    """
    if not (phi.source.is_aggregate() and phi.target.is_aggregate()):
        raise ValueError("decomposition needs aggregates on both sides")
    pieces = {}
    for w in sorted(phi.target.vertices):
        vs = {v for v, x in phi.vertex_surj.items() if x == w}
        src_flags = {f: v for f, v in phi.source.boundary.items() if v in vs}
        tgt_flags = {f: w for f in phi.target.flags_at(w)}
        pieces[w] = GraphMorphism(
            Graph(vs, src_flags),
            Graph((w,), tgt_flags),
            {f: phi.flag_inj[f] for f in tgt_flags},
            {v: w for v in vs},
            {f: g for f, g in phi.ghost_involution.items() if f in src_flags},
        )
    return pieces


def recompose(pieces: Mapping[int, GraphMorphism]) -> GraphMorphism:
    """Inverse of :func:`decompose` (the pieces carry their original ids)."""
    vs, bd, tv, tbd, inj, vmap, ghost = set(), {}, set(), {}, {}, {}, {}
    for p in pieces.values():
        vs |= p.source.vertices
        bd.update(p.source.boundary)
        tv |= p.target.vertices
        tbd.update(p.target.boundary)
        inj.update(p.flag_inj)
        vmap.update(p.vertex_surj)
        ghost.update(p.ghost_involution)
    return GraphMorphism(Graph(vs, bd), Graph(tv, tbd), inj, vmap, ghost)


CONSTRAINTS: dict[str, Callable[[Graph], bool]] = {
    "any": lambda g: True,
    "connected": lambda g: graphs.betti(g)[0] == 1,
    "tree": lambda g: graphs.betti(g) == (1, 0),
    "forest": lambda g: graphs.betti(g)[1] == 0,
}


@dataclass
class BasicMorphisms:
    raw: list[GraphMorphism]
    representatives: list[GraphMorphism]


def enumerate_basic_morphisms(
    source: Graph,
    target: Graph,
    constraint: Callable[[Graph], bool] | str = "any",
    max_flags: int = 8,
) -> BasicMorphisms:
    """All morphisms from an aggregate to a corolla whose ghost graph passes ``constraint``.

    Representatives are one per isomorphism class, where isomorphisms act on
    both source and target; the class is read off the ghost graph.
    """
    if len(target.vertices) != 1 or not target.is_aggregate() or not source.is_aggregate():
        raise ValueError("need an aggregate source and a corolla target")
    if len(source.flags) > max_flags:
        raise ValueError(f"source has more than {max_flags} flags")
    pred = CONSTRAINTS[constraint] if isinstance(constraint, str) else constraint
    raw = [m for m in graphs.all_morphisms(source, target) if pred(graphs.ghost_graph(m))]
    reps: dict[tuple, GraphMorphism] = {}
    for m in raw:
        reps.setdefault(graphs.canonical_form(graphs.ghost_graph(m)), m)
    return BasicMorphisms(raw, list(reps.values()))


def tree_tail_cycle(tree: Graph, cyclic: Mapping[int, Sequence[int]]) -> list[int]:
    """Tails of a planar tree in the cyclic order met while walking around it."""
    succ = {}
    for v, order in cyclic.items():
        for i, f in enumerate(order):
            succ[f] = order[(i + 1) % len(order)]
    tails = sorted(tree.tails())
    if not tails:
        return []
    out = []
    x = tails[0]
    seen = set()
    while x not in seen:
        seen.add(x)
        if tree.involution[x] == x:
            out.append(x)
        x = succ[tree.involution[x]]
    return out


def _same_cycle(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        k = list(b).index(a[0])
    except ValueError:
        return False
    return list(a) == list(b[k:]) + list(b[:k])


def planar_compatible(
    phi: GraphMorphism,
    source_cyclic: Mapping[int, Sequence[int]],
    target_cyclic: Mapping[int, Sequence[int]],
) -> bool:
    """Check that every ghost tree carries the target cyclic order on its tails.

    The ghost tree over a target vertex inherits a planar structure from the
    source corollas; walking around it lists its tails in a cyclic order,
    which must agree with the image of the target corolla's cyclic order.
    """
    for w, comp in graphs.ghost_components(phi).items():
        if graphs.betti(comp) != (1, 0):
            return False
        walk = tree_tail_cycle(comp, {v: source_cyclic[v] for v in comp.vertices})
        image = [phi.flag_inj[f] for f in target_cyclic[w]]
        if not _same_cycle(walk, image):
            return False
    return True


@lru_cache(maxsize=None)
def _aggregate_cached(arities: tuple[int, ...]) -> Graph:
    return graphs.aggregate(arities)


@lru_cache(maxsize=4096)
def _arities(g: Graph) -> tuple[int, ...]:
    counts = dict.fromkeys(sorted(g.vertices), 0)
    for v in g.boundary.values():
        counts[v] += 1
    return tuple(counts.values())


class GraphCategory(FeynmanModel):
    """Bounded model of aggregates of corollas with graph morphisms."""

    name = "Agg"
    symmetric = True

    def __init__(self, max_vertices: int = 3, constraint: str = "any") -> None:
        self.max_vertices = max_vertices
        self.constraint = constraint
        self._pred = CONSTRAINTS[constraint]
        if constraint != "any":
            self.name = f"Agg[{constraint}]"
        self._hom: dict = {}

    def admits(self, m: GraphMorphism) -> bool:
        """Whether ``m`` belongs to this subcategory of graph morphisms."""
        return all(self._pred(c) for c in graphs.ghost_components(m).values())

    def objects(self, bound: int) -> list[tuple[int, ...]]:
        out = []
        for k in range(self.max_vertices + 1):
            for ar in itertools.product(range(bound + 1), repeat=k):
                if sum(ar) <= bound:
                    out.append(ar)
        return out

    def graph(self, X: tuple[int, ...]) -> Graph:
        return _aggregate_cached(X)

    def word(self, X):
        return [(a,) for a in X]

    def tensor_objects(self, objs):
        return tuple(a for o in objs for a in o)

    def hom(self, X, Y):
        if (X, Y) not in self._hom:
            found = graphs.all_morphisms(self.graph(X), self.graph(Y))
            self._hom[X, Y] = [m for m in found if self.admits(m)]
        return self._hom[X, Y]

    def source(self, f):
        return _arities(f.source)

    def target(self, f):
        return _arities(f.target)

    def compose(self, f, g):
        return graphs.compose(f, g)

    def identity(self, X):
        return graphs.identity(self.graph(X))

    def tensor(self, morphisms):
        out = graphs.identity(graphs.EMPTY)
        for m in morphisms:
            out = graphs.union_morphisms(out, m)
        return out

    def is_iso(self, f):
        return f.is_iso()

    def inverse(self, f):
        return graphs.inverse(f)

    def v_isos(self, a, b):
        if a != b:
            return []
        return [m for m in self.hom(a, a) if m.is_iso()]

    def word_permutation(self, sigma) -> list[int]:
        return [sigma.vertex_surj[v] for v in range(len(sigma.vertex_surj))]

    def permutation(self, word, perm):
        X = self.tensor_objects(word)
        Xp = self.tensor_objects([word[i] for i in perm])
        return self._reorder(X, list(perm), Xp)

    def _reorder(self, X, order, Xp) -> GraphMorphism:
        """Isomorphism moving vertex ``order[i]`` of ``X`` to position ``i`` of ``Xp``."""
        src, tgt = self.graph(X), self.graph(Xp)
        vmap = {old: new for new, old in enumerate(order)}
        fmap = {}
        for new, old in enumerate(order):
            for a, b in zip(src.flags_at(old), tgt.flags_at(new)):
                fmap[a] = b
        return GraphMorphism(src, tgt, {b: a for a, b in fmap.items()}, vmap, {}, check=False)

    def decompose(self, f):
        X = self.source(f)
        order = sorted(range(len(X)), key=lambda v: (f.vertex_surj[v], v))
        Xp = tuple(X[v] for v in order)
        sigma = self._reorder(X, order, Xp)
        pieces = self.split(self.compose(self.inverse(sigma), f), None, self.word(self.target(f)))
        return sigma, pieces

    def split(self, f, sources, targets):
        X, Y = self.source(f), self.target(f)
        if self.tensor_objects(targets) != Y:
            return None
        tblock = [i for i, t in enumerate(targets) for _ in t]
        if sources is None:
            blocks = [tblock[f.vertex_surj[v]] for v in range(len(X))]
            if blocks != sorted(blocks):
                return None
            sources = [tuple(X[v] for v in range(len(X)) if blocks[v] == i) for i in range(len(targets))]
        if self.tensor_objects(sources) != X:
            return None
        sblock = [i for i, s in enumerate(sources) for _ in s]
        src, tgt = f.source, f.target
        svoff = [sum(len(s) for s in sources[:i]) for i in range(len(sources))]
        tvoff = [sum(len(t) for t in targets[:i]) for i in range(len(targets))]
        sfoff = [sum(sum(s) for s in sources[:i]) for i in range(len(sources))]
        tfoff = [sum(sum(t) for t in targets[:i]) for i in range(len(targets))]
        fblock_s = {fl: sblock[v] for fl, v in src.boundary.items()}
        fblock_t = {fl: tblock[v] for fl, v in tgt.boundary.items()}
        for v, w in f.vertex_surj.items():
            if sblock[v] != tblock[w]:
                return None
        for a, b in f.flag_inj.items():
            if fblock_t[a] != fblock_s[b]:
                return None
        pieces = []
        for i, (s, t) in enumerate(zip(sources, targets)):
            inj = {a - tfoff[i]: b - sfoff[i] for a, b in f.flag_inj.items() if fblock_t[a] == i}
            vmap = {v - svoff[i]: w - tvoff[i] for v, w in f.vertex_surj.items() if sblock[v] == i}
            ghost = {
                a - sfoff[i]: b - sfoff[i]
                for a, b in f.ghost_involution.items()
                if fblock_s[a] == i
            }
            pieces.append(GraphMorphism(self.graph(s), self.graph(t), inj, vmap, ghost, check=False))
        return pieces

    def iso_objects(self, X):
        return sorted(set(itertools.permutations(X)))


def root_flags(g: Graph) -> set[int]:
    """The first flag of every vertex, read as its root (output) flag."""
    return {g.flags_at(v)[0] for v in g.vertices if g.flags_at(v)}


class RootedCorollaCategory(GraphCategory):
    """Rooted corollas with rooted-tree ghost graphs: the category whose ops are operads.

    An object ``(a_0, ...)`` has corollas with ``a_i >= 1`` flags; the first
    flag of each corolla is its root.  A morphism sends target roots to
    source roots, and each ghost edge joins a root to an input.
    """

    name = "Rooted"

    def __init__(self, max_vertices: int = 3) -> None:
        super().__init__(max_vertices, "tree")
        self.name = "Rooted"

    def objects(self, bound: int) -> list[tuple[int, ...]]:
        return [X for X in super().objects(bound) if all(a >= 1 for a in X)]

    def admits(self, m: GraphMorphism) -> bool:
        if not super().admits(m):
            return False
        src_roots, tgt_roots = root_flags(m.source), root_flags(m.target)
        for a, b in m.flag_inj.items():
            if (a in tgt_roots) != (b in src_roots):
                return False
        for a, b in m.ghost_involution.items():
            if (a in src_roots) == (b in src_roots):
                return False
        return True
