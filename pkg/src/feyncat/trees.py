"""Planar rooted trees with labelled vertices.

A tree is either :data:`LEAF` or a :class:`Node` carrying a label and an
ordered tuple of children.  Leaves are numbered left to right starting at 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Iterator, Sequence

LEAF = "|"


@dataclass(frozen=True)
class Node:
    label: Any
    children: tuple

    @property
    def arity(self) -> int:
        return len(self.children)


def corolla(label: Any, arity: int) -> Node:
    return Node(label, (LEAF,) * arity)


def leaf_count(t) -> int:
    if t == LEAF:
        return 1
    return sum(leaf_count(c) for c in t.children)


def vertex_count(t) -> int:
    if t == LEAF:
        return 0
    return 1 + sum(vertex_count(c) for c in t.children)


def internal_edge_count(t) -> int:
    return max(vertex_count(t) - 1, 0)


def substitute(t, replacements: Sequence) -> Any:
    """Graft ``replacements[j]`` onto leaf ``j + 1`` of ``t`` simultaneously."""
    it = iter(replacements)

    def go(s):
        if s == LEAF:
            return next(it)
        return Node(s.label, tuple(go(c) for c in s.children))

    out = go(t)
    if next(it, None) is not None:
        raise ValueError("more replacements than leaves")
    return out


def graft(t, i: int, s) -> Any:
    """``t o_i s``: graft ``s`` onto leaf ``i`` (1-based) of ``t``."""
    n = leaf_count(t)
    if not 1 <= i <= n:
        raise IndexError(f"leaf {i} out of range 1..{n}")
    return substitute(t, [s if j == i else LEAF for j in range(1, n + 1)])


def relabel(t, f: Callable[[Any], Any]) -> Any:
    if t == LEAF:
        return t
    return Node(f(t.label), tuple(relabel(c, f) for c in t.children))


def to_parens(t, show_labels: bool = False) -> str:
    """Bracketing notation: ``((xx)x)`` for a left comb with three leaves."""
    if t == LEAF:
        return "x"
    inner = "".join(to_parens(c, show_labels) for c in t.children)
    lab = str(t.label) if show_labels else ""
    return f"{lab}({inner})"


def from_parens(s: str) -> Any:
    """Inverse of :func:`to_parens` for unlabelled trees (labels become arities)."""
    pos = 0

    def go():
        nonlocal pos
        if s[pos] == "x":
            pos += 1
            return LEAF
        if s[pos] != "(":
            raise ValueError(f"unexpected {s[pos]!r} at {pos}")
        pos += 1
        kids = []
        while s[pos] != ")":
            kids.append(go())
        pos += 1
        return Node(len(kids), tuple(kids))

    out = go()
    if pos != len(s):
        raise ValueError("trailing characters")
    return out


def vertices_preorder(t) -> list[Node]:
    out = []

    def go(s):
        if s != LEAF:
            out.append(s)
            for c in s.children:
                go(c)

    go(t)
    return out


def internal_edges(t) -> list[tuple[int, int]]:
    """Edges as ``(parent position, child position)`` in preorder numbering."""
    out = []
    counter = itertools.count()

    def go(s) -> int | None:
        if s == LEAF:
            return None
        me = next(counter)
        for c in s.children:
            child = go(c)
            if child is not None:
                out.append((me, child))
        return me

    go(t)
    return out


def _annotate(t):
    counter = itertools.count()

    def go(s):
        if s == LEAF:
            return LEAF
        me = next(counter)
        return (me, s.label, tuple(go(c) for c in s.children))

    return go(t)


def contract_edge(t, child_pos: int) -> Any:
    """Contract the internal edge above the vertex at preorder position ``child_pos``.

    The child's children are spliced into the parent in place; the merged
    vertex is labelled by its new arity.
    """
    if child_pos == 0:
        raise ValueError("the root has no edge above it")

    def go(a):
        if a == LEAF:
            return LEAF
        _, label, kids = a
        out, merged = [], False
        for k in kids:
            if k != LEAF and k[0] == child_pos:
                out.extend(go(x) for x in k[2])
                merged = True
            else:
                out.append(go(k))
        return Node(len(out) if merged else label, tuple(out))

    return go(_annotate(t))


@lru_cache(maxsize=None)
def planar_trees(n: int, min_arity: int = 2, max_arity: int | None = None) -> tuple:
    """All planar rooted trees with ``n`` leaves, vertex arities in range, labelled by arity."""
    if n == 1:
        return (LEAF,)
    top = n if max_arity is None else min(max_arity, n)
    out = []
    for k in range(min_arity, top + 1):
        for parts in _compositions(n, k):
            for kids in itertools.product(*(planar_trees(p, min_arity, max_arity) for p in parts)):
                out.append(Node(k, tuple(kids)))
    return tuple(out)


def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def binary_trees(n: int) -> tuple:
    return planar_trees(n, 2, 2)
