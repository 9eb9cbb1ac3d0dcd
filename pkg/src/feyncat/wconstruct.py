"""Cubical cell complexes of weighted trees: associahedra and their operadic gluing.

A cell is a planar tree with every vertex of arity at least 2 whose
internal edges carry a weight marker: ``free`` (a coordinate of the cube)
or ``one`` (frozen at weight 1).  Zero weights do not appear: the face at
weight 0 contracts the edge.  An edge is named by the interval of leaves
above it, which survives contractions elsewhere in the tree.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .trees import LEAF, Node, binary_trees, planar_trees

FREE, ONE, ROOT = "t", "1", "r"
MAX_N = 8
SCHEMA = "feyncat.cubical/1"


# ---------------------------------------------------------------------------
# marked trees: label = marker of the edge above the vertex


def _mark(t, marker: str, is_root: bool = True):
    if t == LEAF:
        return LEAF
    return Node(ROOT if is_root else marker, tuple(_mark(c, marker, False) for c in t.children))


def edge_intervals(t) -> dict[tuple[int, int], str]:
    """``(first leaf, last leaf) -> marker`` for every internal edge (leaves counted from 1)."""
    out: dict[tuple[int, int], str] = {}

    def go(s, start: int) -> int:
        if s == LEAF:
            return start + 1
        pos = start
        for c in s.children:
            nxt = go(c, pos)
            if c != LEAF:
                out[(pos + 1, nxt)] = c.label
            pos = nxt
        return pos

    go(t, 0)
    return out


def free_edges(t) -> list[tuple[int, int]]:
    return sorted(e for e, m in edge_intervals(t).items() if m == FREE)


def frozen_edges(t) -> list[tuple[int, int]]:
    return sorted(e for e, m in edge_intervals(t).items() if m == ONE)


def _edit(t, edge: tuple[int, int], action: str):
    def go(s, start: int):
        if s == LEAF:
            return LEAF, start + 1
        kids = []
        pos = start
        for c in s.children:
            new, nxt = go(c, pos)
            if c != LEAF and (pos + 1, nxt) == edge:
                if action == "contract":
                    kids.extend(new.children)
                else:
                    kids.append(Node(ONE, new.children))
            else:
                kids.append(new)
            pos = nxt
        return Node(s.label, tuple(kids)), pos

    return go(t, 0)[0]


def zero_face(t, edge: tuple[int, int]):
    """Weight 0: contract the edge."""
    if edge_intervals(t).get(edge) != FREE:
        raise ValueError(f"{edge} is not a free edge")
    return _edit(t, edge, "contract")


def one_face(t, edge: tuple[int, int]):
    """Weight 1: freeze the edge."""
    if edge_intervals(t).get(edge) != FREE:
        raise ValueError(f"{edge} is not a free edge")
    return _edit(t, edge, "freeze")


def to_brackets(t) -> str:
    """``(`` … ``)`` for a free edge or the root, ``[`` … ``]`` for a frozen edge, ``x`` for a leaf."""
    if t == LEAF:
        return "x"
    inner = "".join(to_brackets(c) for c in t.children)
    return f"[{inner}]" if t.label == ONE else f"({inner})"


def from_brackets(s: str):
    pos = 0

    def go(is_root: bool):
        nonlocal pos
        ch = s[pos]
        if ch == "x":
            pos += 1
            return LEAF
        close = {"(": ")", "[": "]"}.get(ch)
        if close is None:
            raise ValueError(f"unexpected {ch!r} at {pos}")
        pos += 1
        kids = []
        while s[pos] != close:
            kids.append(go(False))
        pos += 1
        label = ROOT if is_root else (ONE if ch == "[" else FREE)
        return Node(label, tuple(kids))

    out = go(True)
    if pos != len(s):
        raise ValueError("trailing characters")
    return out


# ---------------------------------------------------------------------------
# complexes


@dataclass
class CubicalComplex:
    """Cells with dimension and tree payload; each free coordinate has a 0-face and a 1-face."""

    name: str
    cells: list = field(default_factory=list)

    def __post_init__(self) -> None:
        self._index = {c: i for i, c in enumerate(self.cells)}

    def index(self, cell) -> int:
        return self._index[cell]

    def __contains__(self, cell) -> bool:
        return cell in self._index

    @staticmethod
    def dim(cell) -> int:
        return len(free_edges(cell))

    def counts(self) -> tuple[int, ...]:
        top = max((self.dim(c) for c in self.cells), default=-1)
        return tuple(sum(1 for c in self.cells if self.dim(c) == d) for d in range(top + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * k for d, k in enumerate(self.counts()))

    def maximal_cells(self) -> list:
        top = len(self.counts()) - 1
        return [c for c in self.cells if self.dim(c) == top]

    def faces(self, cell) -> list[tuple[tuple[int, int], object, object]]:
        return [(e, zero_face(cell, e), one_face(cell, e)) for e in free_edges(cell)]

    def closed_under_faces(self) -> bool:
        return all(z in self and o in self for c in self.cells for _, z, o in self.faces(c))

    def cubical_identity_witness(self):
        """On every square, the four double faces agree: ∂_e^a ∂_f^b = ∂_f^b ∂_e^a."""
        ops = {0: zero_face, 1: one_face}
        for c in self.cells:
            for e, f in itertools.combinations(free_edges(c), 2):
                for a, b in itertools.product((0, 1), repeat=2):
                    if ops[a](ops[b](c, f), e) != ops[b](ops[a](c, e), f):
                        return to_brackets(c), e, f, a, b
        return None

    def to_json(self) -> dict:
        cells = []
        for i, c in enumerate(self.cells):
            cells.append(
                {
                    "id": i,
                    "dim": self.dim(c),
                    "tree": to_brackets(c),
                    "faces": [
                        {"edge": list(e), "zero": self.index(z), "one": self.index(o)}
                        for e, z, o in self.faces(c)
                    ],
                }
            )
        return {"schema": SCHEMA, "name": self.name, "counts": list(self.counts()), "cells": cells}

    @classmethod
    def from_json(cls, data: dict) -> CubicalComplex:
        if data.get("schema") != SCHEMA:
            raise ValueError(f"expected schema {SCHEMA}")
        return cls(data["name"], [from_brackets(c["tree"]) for c in data["cells"]])


def _contractions(t) -> set:
    """All trees obtained by contracting any subset of the edges of an all-free tree."""
    out = {t}
    stack = [t]
    while stack:
        s = stack.pop()
        for e in free_edges(s):
            z = zero_face(s, e)
            if z not in out:
                out.add(z)
                stack.append(z)
    return out


def _markings(t) -> list:
    edges = free_edges(t)
    out = []
    for frozen in itertools.product((False, True), repeat=len(edges)):
        s = t
        for e, fr in zip(edges, frozen):
            if fr:
                s = one_face(s, e)
        out.append(s)
    return out


def _sort_key(cell):
    return (CubicalComplex.dim(cell), to_brackets(cell))


CATEGORIES = {
    "trivalent": lambda n: binary_trees(n),
    "planar": lambda n: planar_trees(n),
}


def w_cells(category: str, n: int, maxdim: int | None = None) -> CubicalComplex:
    """Cells of the W-construction at the ``n``-ary corolla for a planar-tree category.

    Cells are the iso classes of weighted chains ending at the corolla: the
    degree-``k`` morphisms are trees with ``k`` edges, each edge weighted.
    """
    if category not in CATEGORIES:
        raise ValueError(f"category must be one of {sorted(CATEGORIES)}")
    if n > MAX_N:
        raise ValueError(f"n = {n} exceeds the bound {MAX_N}")
    if n < 2:
        raise ValueError("the target corolla needs at least two inputs")
    trees: set = set()
    for t in CATEGORIES[category](n):
        trees |= _contractions(_mark(t, FREE))
    cells = [c for t in trees for c in _markings(t)]
    if maxdim is not None:
        cells = [c for c in cells if CubicalComplex.dim(c) <= maxdim]
    return CubicalComplex(f"W({category})({n})", sorted(set(cells), key=_sort_key))


def associahedron(n: int) -> CubicalComplex:
    """K_n: cells are planar trees with ``n`` leaves and each edge free or frozen."""
    if n < 3:
        raise ValueError("associahedra start at n = 3")
    K = w_cells("trivalent", n)
    K.name = f"K{n}"
    return K


def boundary_facets(K: CubicalComplex) -> dict[tuple[int, int], list]:
    """Codimension-one cells with exactly one frozen edge, grouped by that edge."""
    top = len(K.counts()) - 1
    out: dict[tuple[int, int], list] = {}
    for c in K.cells:
        fr = frozen_edges(c)
        if K.dim(c) == top - 1 and len(fr) == 1:
            out.setdefault(fr[0], []).append(c)
    return out


def graft_marked(a, b, i: int):
    """``a ∘_i b`` on marked trees; the new edge is frozen at weight 1."""
    leaves = itertools.count(1)

    def go(s):
        if s == LEAF:
            if next(leaves) == i:
                return Node(ONE, b.children)
            return LEAF
        return Node(s.label, tuple(go(c) for c in s.children))

    n = _leaf_count(a)
    if not 1 <= i <= n:
        raise IndexError(f"slot {i} out of range 1..{n}")
    return go(a)


def _leaf_count(t) -> int:
    return 1 if t == LEAF else sum(_leaf_count(c) for c in t.children)


@dataclass
class Gluing:
    image: CubicalComplex
    product_size: int
    ambient: CubicalComplex
    edge: tuple[int, int]


def glue_circ_i(Kn: CubicalComplex, Km: CubicalComplex, i: int) -> Gluing:
    """Image of ``K_n × K_m`` in ``K_{n+m-1}`` under grafting at slot ``i``."""
    n = _leaf_count(Kn.cells[0])
    m = _leaf_count(Km.cells[0])
    if not 1 <= i <= n:
        raise IndexError(f"slot {i} out of range 1..{n}")
    ambient = associahedron(n + m - 1)
    image = [graft_marked(a, b, i) for a in Kn.cells for b in Km.cells]
    for c in image:
        if c not in ambient:
            raise ValueError(f"{to_brackets(c)} is not a cell of the target")
    sub = CubicalComplex(f"{Kn.name}∘{i}{Km.name}", sorted(set(image), key=_sort_key))
    return Gluing(sub, len(Kn.cells) * len(Km.cells), ambient, (i, i + m - 1))


def gluing_functoriality_witness(Kn: CubicalComplex, Km: CubicalComplex, i: int):
    """Faces of a glued cell are the glued faces of its factors."""
    for a in Kn.cells:
        for b in Km.cells:
            g = graft_marked(a, b, i)
            expected = set()
            for e, z, o in Kn.faces(a):
                expected |= {graft_marked(z, b, i), graft_marked(o, b, i)}
            for e, z, o in Km.faces(b):
                expected |= {graft_marked(a, z, i), graft_marked(a, o, i)}
            got = {x for _, z, o in Kn.faces(g) for x in (z, o)}
            if got != expected:
                return to_brackets(a), to_brackets(b)
    return None


# ---------------------------------------------------------------------------
# coordinates


def loday_coordinates(t) -> tuple[int, ...]:
    """Integer point of a binary tree: for each internal vertex in order, left leaves × right leaves."""
    out: list[int] = []

    def go(s):
        if s == LEAF:
            return 1
        left = go(s.children[0])
        out.append(0)
        slot = len(out) - 1
        right = go(s.children[1])
        out[slot] = left * right
        return left + right

    go(t)
    return tuple(out)


def _unmark(t):
    if t == LEAF:
        return LEAF
    return Node(len(t.children), tuple(_unmark(c) for c in t.children))


def vertex_coordinates(K: CubicalComplex, n: int) -> dict:
    """Each 0-cell sits at the barycentre of the binary trees refining its tree."""
    coords: dict = {}
    binaries = [_mark(b, FREE) for b in binary_trees(n)]
    refine = {b: _contractions(b) for b in binaries}
    for c in K.cells:
        if K.dim(c) != 0:
            continue
        plain = _mark(_unmark(c), FREE)
        pts = [loday_coordinates(b) for b in binaries if plain in refine[b]]
        coords[c] = tuple(sum(Fraction(p[j]) for p in pts) / len(pts) for j in range(n - 1))
    return coords


def _corners(K: CubicalComplex, c) -> list:
    """Corners of a 1- or 2-cell in cyclic order."""
    edges = free_edges(c)
    ops = {0: zero_face, 1: one_face}
    if len(edges) == 1:
        return [ops[a](c, edges[0]) for a in (0, 1)]
    e, f = edges
    order = [(0, 0), (1, 0), (1, 1), (0, 1)]
    return [ops[b](ops[a](c, e), f) for a, b in order]


def to_off(K: CubicalComplex, n: int) -> str:
    """OFF polygon file: squares for K_4, segments for K_3."""
    if n not in (3, 4):
        raise ValueError("OFF export is provided for K3 and K4")
    coords = vertex_coordinates(K, n)
    verts = sorted(coords, key=_sort_key)
    vid = {v: i for i, v in enumerate(verts)}
    top = len(K.counts()) - 1
    faces = [_corners(K, c) for c in K.cells if K.dim(c) == top]
    lines = ["OFF", f"{len(verts)} {len(faces)} 0"]
    for v in verts:
        p = list(coords[v]) + [Fraction(0)] * (3 - len(coords[v]))
        lines.append(" ".join(f"{float(x):g}" for x in p[:3]))
    for f in faces:
        lines.append(f"{len(f)} " + " ".join(str(vid[v]) for v in f))
    return "\n".join(lines) + "\n"


def dumps(K: CubicalComplex) -> str:
    return json.dumps(K.to_json(), indent=2, ensure_ascii=False)
