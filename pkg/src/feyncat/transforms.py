"""Signed tree complexes: the edge-contraction differential, bar, cobar and Feynman transforms.

Conventions.  Every edge of a tree has degree 1 and orientations are
wedges of edges, so reordering edges multiplies by the permutation sign.
Vertex generators sit in degree 0.  A tree is stored by its shape
(a :class:`~feyncat.trees.Node` labelled by generator) in a fixed canonical
edge order; any other order is converted through :func:`ktwist_sign`.
Contraction removes an edge from the wedge with sign ``(-1)^position``;
expansion inserts the new edge in front.

The master equation is read on the suspension ``sA``, where every
structure map ``b_n`` has degree -1 and ``b_1`` is the differential.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Hashable, Sequence

from .linear import FreeModuleElement
from .trees import LEAF, Node, planar_trees

ORDER_SCHEMES = ("level", "preorder", "reverse")


# ---------------------------------------------------------------------------
# signs


def permutation_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def ktwist_sign(order_a: Sequence[Hashable], order_b: Sequence[Hashable]) -> int:
    """Sign relating two orderings of one edge set: ``a_1∧…∧a_k = sign · b_1∧…∧b_k``."""
    if len(order_a) != len(order_b) or set(order_a) != set(order_b) or len(set(order_a)) != len(order_a):
        raise ValueError("orders must list the same edges, each once")
    pos = {e: i for i, e in enumerate(order_b)}
    return permutation_sign([pos[e] for e in order_a])


# ---------------------------------------------------------------------------
# trees with vertex ids; an edge is named by the id of its lower vertex


@dataclass(frozen=True)
class Vertex:
    id: int
    gen: Any
    outer: bool = False  # colour of the edge above this vertex (cobar edges in ΩB)


def index_tree(t, colored: bool = False) -> Any:
    """Attach preorder ids; labels ``gen`` (or ``(gen, outer)`` when colored) become :class:`Vertex`."""
    counter = itertools.count()

    def go(s):
        if s == LEAF:
            return LEAF
        me = next(counter)
        gen, outer = s.label if colored else (s.label, False)
        return Node(Vertex(me, gen, outer), tuple(go(c) for c in s.children))

    return go(t)


def shape(t, colored: bool = False) -> Any:
    if t == LEAF:
        return LEAF
    label = (t.label.gen, t.label.outer) if colored else t.label.gen
    return Node(label, tuple(shape(c, colored) for c in t.children))


def _positions(t) -> dict[int, tuple[int, int]]:
    """``id -> (depth, preorder position)`` for every vertex."""
    out: dict[int, tuple[int, int]] = {}
    counter = itertools.count()

    def go(s, depth):
        if s == LEAF:
            return
        out[s.label.id] = (depth, next(counter))
        for c in s.children:
            go(c, depth + 1)

    go(t, 0)
    return out


def _edges(t, inner_only: bool = False) -> list[int]:
    out = []

    def go(s, is_root):
        if s == LEAF:
            return
        if not is_root and not (inner_only and s.label.outer):
            out.append(s.label.id)
        for c in s.children:
            go(c, False)

    go(t, True)
    return out


def canonical_order(t, scheme: str = "level", inner_only: bool = False) -> list[int]:
    """The reference edge order: by level then planar position, or by one of the alternatives."""
    if scheme not in ORDER_SCHEMES:
        raise ValueError(f"scheme must be one of {ORDER_SCHEMES}")
    pos = _positions(t)
    edges = _edges(t, inner_only)
    if scheme == "level":
        return sorted(edges, key=lambda e: pos[e])
    if scheme == "preorder":
        return sorted(edges, key=lambda e: pos[e][1])
    return sorted(edges, key=lambda e: -pos[e][1])


def canonicalize(t, order: Sequence[int], scheme: str = "level", colored: bool = False) -> tuple[Any, int]:
    """Shape of ``t`` and the sign turning ``order`` into the canonical orientation."""
    return shape(t, colored), ktwist_sign(order, canonical_order(t, scheme, colored))


def contract(t, edge: int, merge: Callable[[Any, int, Any, int], Any]) -> Any:
    """Contract the edge above vertex ``edge``; ``merge(parent, slot, child, arity)`` labels the result.

    Returns ``None`` when ``merge`` does (a vanishing composite).
    """
    failed = False

    def go(s):
        nonlocal failed
        if s == LEAF:
            return LEAF
        kids = []
        label = s.label
        for slot, c in enumerate(s.children, start=1):
            if c != LEAF and c.label.id == edge:
                kids.extend(go(x) for x in c.children)
                gen = merge(label.gen, slot, c.label.gen, len(s.children) + len(c.children) - 1)
                if gen is None:
                    failed = True
                label = Vertex(label.id, gen, label.outer)
            else:
                kids.append(go(c))
        return Node(label, tuple(kids))

    out = go(t)
    return None if failed else out


def _merge_arity(parent, slot, child, arity):
    return arity


def tree_classes(max_edges: int, max_leaves: int = 6) -> list:
    """Planar trees with all vertices of arity at least 2, labelled by arity."""
    out = []
    for n in range(2, max_leaves + 1):
        out.extend(t for t in planar_trees(n) if _edge_count(t) <= max_edges)
    return out


def _edge_count(t) -> int:
    if t == LEAF:
        return 0
    return sum(1 + _edge_count(c) for c in t.children if c != LEAF)


def _oriented(key, scheme: str, colored: bool = False):
    t = index_tree(key, colored)
    return t, canonical_order(t, scheme, colored)


def d_phi1(x: FreeModuleElement, scheme: str = "level") -> FreeModuleElement:
    """Sum over single edge contractions, each removing its edge from the orientation."""
    out = []
    for key, c in x.items():
        t, order = _oriented(key, scheme)
        for p, e in enumerate(order):
            t2 = contract(t, e, _merge_arity)
            rest = [f for f in order if f != e]
            s2, sign = canonicalize(t2, rest, scheme)
            out.append((s2, c * (-1) ** p * sign))
    return FreeModuleElement(out)


def maximal_chains(key) -> int:
    """Number of ways to contract a tree down to a corolla one edge at a time."""

    def count(t) -> int:
        edges = _edges(t)
        if not edges:
            return 1
        return sum(count(contract(t, e, _merge_arity)) for e in edges)

    return count(index_tree(key))


# ---------------------------------------------------------------------------
# graded spaces and ranks


def rank(rows: list[list[Fraction]]) -> int:
    m = [list(r) for r in rows if any(r)]
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


@dataclass
class GradedSpace:
    """Finite bases per degree and a differential of fixed degree on basis keys."""

    bases: dict[int, list]
    differential: Callable[[Hashable], FreeModuleElement]
    step: int = 1

    def d(self, x: FreeModuleElement) -> FreeModuleElement:
        return x.map(self.differential)

    def matrix(self, degree: int) -> list[list[Fraction]]:
        src = self.bases.get(degree, [])
        tgt = self.bases.get(degree + self.step, [])
        index = {k: i for i, k in enumerate(tgt)}
        rows = []
        for key in src:
            row = [Fraction(0)] * len(tgt)
            for k, v in self.differential(key).items():
                if k not in index:
                    raise ValueError(f"differential leaves the truncation at {key!r}")
                row[index[k]] = v
            rows.append(row)
        return rows

    def d_squared_witness(self):
        for deg, keys in self.bases.items():
            for key in keys:
                if not self.d(self.differential(key)).is_zero():
                    return key
        return None

    def homology_ranks(self) -> dict[int, int]:
        ranks = {deg: rank(self.matrix(deg)) for deg in self.bases}
        return {
            deg: len(keys) - ranks[deg] - ranks.get(deg - self.step, 0)
            for deg, keys in sorted(self.bases.items())
        }


# ---------------------------------------------------------------------------
# nonsymmetric operads and their transforms


@dataclass(frozen=True)
class NSOperad:
    """A reduced nonsymmetric set operad: generators per arity >= 2, ``circ`` may vanish (``None``)."""

    name: str
    generators: Callable[[int], list]
    circ: Callable[[Any, int, Any], Any]


def ns_ass() -> NSOperad:
    """One operation per arity ``n >= 2``, labelled by its arity."""
    return NSOperad(
        "ass",
        lambda n: [n] if n >= 2 else [],
        lambda a, i, b: a + b - 1,
    )


def trivial_operad() -> NSOperad:
    return NSOperad("trivial", lambda n: [], lambda a, i, b: None)


def operad_by_name(name: str) -> NSOperad:
    table = {"ass": ns_ass, "trivial": trivial_operad}
    if name not in table:
        raise ValueError(f"unknown operad {name!r}; known: {sorted(table)}")
    return table[name]()


def labelled_trees(O: NSOperad, n: int, colored: bool = False) -> list:
    """Planar trees with ``n`` leaves and vertices labelled by generators of matching arity."""
    out = []
    for t in planar_trees(n):
        out.extend(_labellings(O, t, colored))
    return out


def _labellings(O: NSOperad, t, colored: bool, is_root: bool = True) -> list:
    if t == LEAF:
        return [LEAF]
    kid_options = [_labellings(O, c, colored, False) for c in t.children]
    colors = [False, True] if colored and not is_root else [False]
    out = []
    for gen in O.generators(len(t.children)):
        for kids in itertools.product(*kid_options):
            for col in colors:
                label = (gen, col) if colored else gen
                out.append(Node(label, tuple(kids)))
    return out


def _expansions(O: NSOperad, t, max_id: int):
    """Split one vertex ``x`` into ``a ∘_i b`` with ``a ∘_i b = x``; yields ``(tree, new edge id)``."""
    new_id = max_id + 1

    def go(s):
        if s == LEAF:
            return
        n = len(s.children)
        x = s.label.gen
        for k in range(2, n):
            l = n - k + 1
            for i in range(1, k + 1):
                for a in O.generators(k):
                    for b in O.generators(l):
                        if O.circ(a, i, b) != x:
                            continue
                        inner = Node(Vertex(new_id, b), s.children[i - 1 : i - 1 + l])
                        kids = s.children[: i - 1] + (inner,) + s.children[i - 1 + l :]
                        yield Node(Vertex(s.label.id, a, s.label.outer), kids)
        for j, c in enumerate(s.children):
            for new in go(c):
                yield Node(s.label, s.children[:j] + (new,) + s.children[j + 1 :])

    for tree in go(t):
        yield tree, new_id


def ft_differential(O: NSOperad, key, scheme: str = "level") -> FreeModuleElement:
    """Differential of the Feynman transform: dual of composition, the new edge placed first."""
    t, order = _oriented(key, scheme)
    max_id = max(_positions(t))
    out = []
    for tree, e in _expansions(O, t, max_id):
        s2, sign = canonicalize(tree, [e] + order, scheme)
        out.append((s2, sign))
    return FreeModuleElement(out)


@dataclass
class TruncatedDgOperad:
    """Arity-indexed graded spaces of a quasi-free operad, truncated at ``max_arity``."""

    name: str
    max_arity: int
    spaces: dict[int, GradedSpace] = field(default_factory=dict)

    def d_squared_witness(self):
        for n, space in self.spaces.items():
            w = space.d_squared_witness()
            if w is not None:
                return n, w
        return None


def _by_edges(keys: list) -> dict[int, list]:
    bases: dict[int, list] = {}
    for k in keys:
        bases.setdefault(_edge_count(k), []).append(k)
    return bases


def feynman_transform(O: NSOperad, max_arity: int, scheme: str = "level") -> TruncatedDgOperad:
    """Free operad on the duals of ``O``, graded by edge count, with the expansion differential."""
    out = TruncatedDgOperad(f"FT({O.name})", max_arity)
    for n in range(2, max_arity + 1):
        keys = labelled_trees(O, n)
        out.spaces[n] = GradedSpace(_by_edges(keys), lambda k, O=O: ft_differential(O, k, scheme), step=1)
    return out


def quadratic_terms(O: NSOperad, n: int) -> FreeModuleElement:
    """The differential of the arity-``n`` generator (a corolla) of the Feynman transform."""
    gens = O.generators(n)
    if not gens:
        return FreeModuleElement()
    return ft_differential(O, Node(gens[0], (LEAF,) * n))


def bar_differential(O: NSOperad, key, scheme: str = "level") -> FreeModuleElement:
    """Contract an edge by composing its two labels; vanishing composites drop out."""
    t, order = _oriented(key, scheme)
    out = []
    for p, e in enumerate(order):
        t2 = contract(t, e, lambda a, i, b, n: O.circ(a, i, b))
        if t2 is None:
            continue
        rest = [f for f in order if f != e]
        s2, sign = canonicalize(t2, rest, scheme)
        out.append((s2, (-1) ** p * sign))
    return FreeModuleElement(out)


def bar_construction(O: NSOperad, max_arity: int) -> TruncatedDgOperad:
    out = TruncatedDgOperad(f"B({O.name})", max_arity)
    for n in range(2, max_arity + 1):
        keys = labelled_trees(O, n)
        out.spaces[n] = GradedSpace(_by_edges(keys), lambda k, O=O: bar_differential(O, k), step=-1)
    return out


def _inner_count(t) -> int:
    if t == LEAF:
        return 0
    return sum((0 if c.label[1] else 1) + _inner_count(c) for c in t.children if c != LEAF)


def cobar_bar_differential(O: NSOperad, key) -> FreeModuleElement:
    """On ΩB: contract an inner edge (composing labels) minus turning it into a cobar edge.

    Only inner edges carry degree; both terms remove one from the orientation.
    """
    t, order = _oriented(key, "level", colored=True)
    out = []
    for p, e in enumerate(order):
        rest = [f for f in order if f != e]
        t2 = contract(t, e, lambda a, i, b, n: O.circ(a, i, b))
        if t2 is not None:
            s2, sign = canonicalize(t2, rest, "level", colored=True)
            out.append((s2, (-1) ** p * sign))
        t3 = _mark_outer(t, e)
        s3, sign = canonicalize(t3, rest, "level", colored=True)
        out.append((s3, -((-1) ** p) * sign))
    return FreeModuleElement(out)


def _mark_outer(t, edge: int):
    if t == LEAF:
        return LEAF
    label = t.label
    if label.id == edge:
        label = Vertex(label.id, label.gen, True)
    return Node(label, tuple(_mark_outer(c, edge) for c in t.children))


def cobar_bar(O: NSOperad, max_arity: int) -> TruncatedDgOperad:
    """ΩB(O): trees whose edges are inner (bar) or outer (cobar), graded by inner edges."""
    out = TruncatedDgOperad(f"ΩB({O.name})", max_arity)
    for n in range(2, max_arity + 1):
        keys = labelled_trees(O, n, colored=True)
        bases: dict[int, list] = {}
        for k in keys:
            bases.setdefault(_inner_count(k), []).append(k)
        out.spaces[n] = GradedSpace(bases, lambda k, O=O: cobar_bar_differential(O, k), step=-1)
    return out


def counit(O: NSOperad, key) -> FreeModuleElement:
    """ΩB(O) -> O: compose along cobar edges when no inner edge is left, zero otherwise."""
    if _inner_count(key) > 0:
        return FreeModuleElement()

    def compose(s):
        gen = s.label[0]
        slot_shift = 0
        for j, c in enumerate(s.children, start=1):
            if c == LEAF:
                continue
            sub = compose(c)
            if sub is None or gen is None:
                return None
            arity_c = _leaves(c)
            gen = O.circ(gen, j + slot_shift, sub)
            slot_shift += arity_c - 1
        return gen

    g = compose(key)
    return FreeModuleElement() if g is None else FreeModuleElement.basis(g)


def _leaves(t) -> int:
    return 1 if t == LEAF else sum(_leaves(c) for c in t.children)


def counit_chain_map_witness(O: NSOperad, max_arity: int):
    """The counit kills the differential of every degree-one element (``O`` has zero differential)."""
    cb = cobar_bar(O, max_arity)
    for n, space in cb.spaces.items():
        for key in space.bases.get(1, []):
            image = space.differential(key).map(lambda k: counit(O, k))
            if not image.is_zero():
                return n, key
    return None


# ---------------------------------------------------------------------------
# master equation


Vector = dict  # basis index -> Fraction


@dataclass
class DgSpace:
    """A finite graded vector space: ``degrees[i]`` is the degree of basis vector ``i``; ``d`` has degree -1."""

    degrees: tuple[int, ...]
    d: dict[int, Vector] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.degrees)


Multilinear = dict  # tuple of basis indices -> Vector


def _add(acc: dict, v: Vector, c) -> None:
    for k, x in v.items():
        acc[k] = acc.get(k, Fraction(0)) + c * x


def _clean(v: dict) -> dict:
    return {k: x for k, x in v.items() if x != 0}


def _validate(A: DgSpace, maps: dict[int, Multilinear]) -> None:
    for n, m in maps.items():
        for args, out in m.items():
            if len(args) != n or any(not 0 <= a < A.dim for a in args):
                raise ValueError(f"m_{n} has an argument tuple of the wrong shape: {args}")
            for k, x in out.items():
                if not 0 <= k < A.dim:
                    raise ValueError(f"m_{n} has an output outside the space: {k}")
                if x != 0 and A.degrees[k] != sum(A.degrees[a] for a in args) + n - 2:
                    raise ValueError(f"m_{n}{args} has the wrong degree")
    for a, out in A.d.items():
        for k, x in out.items():
            if x != 0 and A.degrees[k] != A.degrees[a] - 1:
                raise ValueError("the differential must have degree -1")


def suspend(A: DgSpace, maps: dict[int, Multilinear]) -> dict[int, Multilinear]:
    """``b_n = s ∘ m_n ∘ (s^{-1})^{⊗n}``; ``b_1`` is the differential of ``sA``."""
    out: dict[int, Multilinear] = {1: {(a,): dict(v) for a, v in A.d.items()}}
    for n, m in maps.items():
        bn = {}
        for args, v in m.items():
            sign = (-1) ** sum((n - 1 - j) * (A.degrees[a] + 1) for j, a in enumerate(args))
            bn[args] = {k: sign * x for k, x in v.items()}
        out[n] = bn
    return out


def _apply(m: Multilinear, args: tuple) -> Vector:
    return m.get(args, {})


def _apply_tensor(m: Multilinear, args_vectors: list[Vector]) -> Vector:
    """``m`` on a tensor product of vectors, expanded on basis tuples."""
    acc: dict = {}
    for combo in itertools.product(*(v.items() for v in args_vectors)):
        coeff = Fraction(1)
        for _, c in combo:
            coeff *= c
        _add(acc, _apply(m, tuple(k for k, _ in combo)), coeff)
    return acc


def me_defect(A: DgSpace, b: dict[int, Multilinear], n: int) -> dict[tuple, Vector]:
    """``Σ_{k+l=n+1} Σ_i ± b_k ∘_i b_l`` on basis inputs of ``sA`` (degree of ``s a`` is ``|a|+1``)."""
    sdeg = [d + 1 for d in A.degrees]
    out = {}
    for args in itertools.product(range(A.dim), repeat=n):
        acc: dict = {}
        for l in range(1, n + 1):
            k = n + 1 - l
            if k not in b or l not in b:
                continue
            for i in range(k):
                sign = (-1) ** sum(sdeg[a] for a in args[:i])
                inner = _apply(b[l], args[i : i + l])
                outer_args = [{a: Fraction(1)} for a in args[:i]] + [inner] + [{a: Fraction(1)} for a in args[i + l :]]
                _add(acc, _apply_tensor(b[k], outer_args), sign)
        acc = _clean(acc)
        if acc:
            out[args] = acc
    return out


def _eval_tree(b: dict[int, Multilinear], sdeg: list[int], t, args: tuple) -> Vector:
    """A planar tree of odd operations ``b_arity`` on basis inputs, with Koszul signs."""
    if t == LEAF:
        return {args[0]: Fraction(1)}
    vectors = []
    sign = 1
    pos = 0
    for c in t.children:
        width = _leaves(c)
        odd_ops = _vertex_count(c)
        sign *= (-1) ** (odd_ops * sum(sdeg[a] for a in args[:pos]))
        vectors.append(_eval_tree(b, sdeg, c, args[pos : pos + width]))
        pos += width
    out = _apply_tensor(b.get(len(t.children), {}), vectors)
    return {k: sign * x for k, x in out.items()}


def _vertex_count(t) -> int:
    return 0 if t == LEAF else 1 + sum(_vertex_count(c) for c in t.children)


def dg_map_defect(A: DgSpace, b: dict[int, Multilinear], n: int) -> dict[tuple, Vector]:
    """Generator ``μ_n^∨ ↦ b_n``: compare ``∂(b_n)`` with the image of the transform's differential."""
    sdeg = [d + 1 for d in A.degrees]
    ass = ns_ass()
    image = quadratic_terms(ass, n)
    corolla = Node(n, (LEAF,) * n)
    out = {}
    for args in itertools.product(range(A.dim), repeat=n):
        acc: dict = {}
        for tree, c in image.items():
            _add(acc, _eval_tree(b, sdeg, tree, args), c)
        # ∂(b_n) = b_1 ∘ b_n + Σ_i b_n ∘_i b_1
        for grafted in [Node(1, (corolla,))] + [
            Node(n, tuple(Node(1, (LEAF,)) if j == i else LEAF for j in range(n))) for i in range(n)
        ]:
            _add(acc, _eval_tree(b, sdeg, grafted, args), 1)
        acc = _clean(acc)
        if acc:
            out[args] = acc
    return out


@dataclass
class MasterEquationReport:
    holds: bool
    dg_map: bool
    agree: bool
    witness: Any = None

    def __str__(self) -> str:
        return (
            f"master equation: {'holds' if self.holds else 'fails'}; "
            f"dg-map condition: {'holds' if self.dg_map else 'fails'}; "
            f"{'agree' if self.agree else 'DISAGREE'}"
            + (f"; witness {self.witness}" if self.witness else "")
        )


def master_equation_check(A: DgSpace, maps: dict[int, Multilinear], max_arity: int) -> MasterEquationReport:
    """Check ``d(α) + α∘α = 0`` arity by arity, and separately the dg-map condition out of FT(Ass)."""
    if any(n < 2 or n > max_arity for n in maps):
        raise ValueError(f"structure maps must have arities 2..{max_arity}")
    _validate(A, maps)
    b = suspend(A, maps)
    me_witness = dg_witness = None
    for n in range(2, max_arity + 1):
        if me_witness is None:
            defect = me_defect(A, b, n)
            if defect:
                me_witness = (n, next(iter(defect)))
        if dg_witness is None:
            defect = dg_map_defect(A, b, n)
            if defect:
                dg_witness = (n, next(iter(defect)))
    holds, dg = me_witness is None, dg_witness is None
    return MasterEquationReport(holds, dg, holds == dg, me_witness or dg_witness)


def stasheff_defect(A: DgSpace, maps: dict[int, Multilinear], n: int) -> dict[tuple, Vector]:
    """``Σ_{r+s+t=n} (-1)^{r+st} m_{r+1+t}(1^r ⊗ m_s ⊗ 1^t)`` directly on ``A`` (``m_1 = d``)."""
    m = {1: {(a,): dict(v) for a, v in A.d.items()}, **maps}
    out = {}
    for args in itertools.product(range(A.dim), repeat=n):
        acc: dict = {}
        for s in range(1, n + 1):
            for r in range(n - s + 1):
                t = n - r - s
                outer = r + 1 + t
                if s not in m or outer not in m:
                    continue
                koszul = (s - 2) * sum(A.degrees[a] for a in args[:r])
                sign = (-1) ** (r + s * t + koszul)
                inner = _apply(m[s], args[r : r + s])
                vecs = [{a: Fraction(1)} for a in args[:r]] + [inner] + [{a: Fraction(1)} for a in args[r + s :]]
                _add(acc, _apply_tensor(m[outer], vecs), sign)
        acc = _clean(acc)
        if acc:
            out[args] = acc
    return out


def random_structure_maps(
    A: DgSpace, arities: Sequence[int], rng, values: Sequence[int] = (-1, 0, 1)
) -> dict[int, Multilinear]:
    """Structure maps of the right degree with coefficients drawn from ``values``."""
    maps: dict[int, Multilinear] = {}
    for n in arities:
        m: Multilinear = {}
        for args in itertools.product(range(A.dim), repeat=n):
            want = sum(A.degrees[a] for a in args) + n - 2
            out = {k: Fraction(rng.choice(values)) for k in range(A.dim) if A.degrees[k] == want}
            out = _clean(out)
            if out:
                m[args] = out
        maps[n] = m
    return maps


def line_algebra(c) -> tuple[DgSpace, dict[int, Multilinear]]:
    """One basis vector in degree 0 with ``m_2(e, e) = c e``."""
    return DgSpace((0,)), {2: {(0, 0): {0: Fraction(c)}}}


def unital_dg_algebra() -> tuple[DgSpace, dict[int, Multilinear]]:
    """Basis ``u`` (degree 0) and ``v`` (degree 1), ``dv = u``, ``u`` a two-sided unit for ``m_2``."""
    A = DgSpace((0, 1), {1: {0: Fraction(1)}})
    one = Fraction(1)
    return A, {2: {(0, 0): {0: one}, (0, 1): {1: one}, (1, 0): {1: one}}}
