"""Small finite groups, permutations and monoid tables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

Perm = tuple[int, ...]


def perm_compose(p: Perm, q: Perm) -> Perm:
    """``p o q`` (apply ``q`` first)."""
    return tuple(p[i] for i in q)


def perm_inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def perm_sign(p: Sequence[int]) -> int:
    """Sign of a permutation given as a sequence of distinct sortable items."""
    p = list(p)
    sign = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def relative_sign(a: Sequence, b: Sequence) -> int:
    """Sign of the permutation carrying the order ``a`` to the order ``b``."""
    if sorted(map(repr, a)) != sorted(map(repr, b)) or len(set(a)) != len(a):
        raise ValueError("orders must list the same distinct items")
    pos = {x: i for i, x in enumerate(b)}
    return perm_sign([pos[x] for x in a])


@dataclass(frozen=True)
class MonoidTable:
    """A finite magma on ``range(n)`` that is checked to be a (possibly unital) monoid."""

    mult: tuple[tuple[int, ...], ...]
    unit: int | None = None

    @property
    def carrier(self) -> range:
        return range(len(self.mult))

    @property
    def commutative(self) -> bool:
        n = len(self.mult)
        return all(self.mult[a][b] == self.mult[b][a] for a in range(n) for b in range(n))

    def __call__(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def associativity_witness(self) -> tuple[int, int, int] | None:
        m = self.mult
        for a, b, c in itertools.product(self.carrier, repeat=3):
            if m[m[a][b]][c] != m[a][m[b][c]]:
                return (a, b, c)
        return None

    def commutativity_witness(self) -> tuple[int, int] | None:
        for a, b in itertools.product(self.carrier, repeat=2):
            if self.mult[a][b] != self.mult[b][a]:
                return (a, b)
        return None

    def find_unit(self) -> int | None:
        for e in self.carrier:
            if all(self.mult[e][a] == a == self.mult[a][e] for a in self.carrier):
                return e
        return None

    def __post_init__(self) -> None:
        n = len(self.mult)
        if any(len(row) != n or any(not 0 <= x < n for x in row) for row in self.mult):
            raise ValueError("multiplication table must be square with entries in the carrier")
        if self.unit is not None and self.find_unit() != self.unit:
            raise ValueError("declared unit is not a two-sided unit")


def all_monoids(order: int, unital: bool | None = None) -> list[MonoidTable]:
    """Every associative table on ``range(order)`` (not up to isomorphism)."""
    out = []
    n = order
    for flat in itertools.product(range(n), repeat=n * n):
        table = tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(n))
        m = MonoidTable(table)
        if m.associativity_witness() is not None:
            continue
        e = m.find_unit()
        if unital is True and e is None:
            continue
        if unital is False and e is not None:
            continue
        out.append(MonoidTable(table, e) if unital else m)
    return out


def monoids_isomorphic(a: MonoidTable, b: MonoidTable) -> bool:
    if len(a.mult) != len(b.mult):
        return False
    for p in itertools.permutations(a.carrier):
        if all(p[a.mult[x][y]] == b.mult[p[x]][p[y]] for x in a.carrier for y in a.carrier):
            return True
    return False


@dataclass(frozen=True)
class FiniteGroup:
    """A group on ``range(n)`` with identity ``0``; optionally realised by permutations."""

    mult: tuple[tuple[int, ...], ...]
    elements: tuple = ()

    @property
    def order(self) -> int:
        return len(self.mult)

    def __call__(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inverse(self, a: int) -> int:
        return next(b for b in range(self.order) if self.mult[a][b] == 0)

    def __post_init__(self) -> None:
        n = self.order
        m = MonoidTable(self.mult)
        if m.associativity_witness() is not None or m.find_unit() != 0:
            raise ValueError("table is not a group with identity 0")
        if any(sorted(row) != list(range(n)) for row in self.mult):
            raise ValueError("table is not a group (rows are not permutations)")


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def permutation_group(gens: Iterable[Perm], degree: int) -> FiniteGroup:
    """The group generated by ``gens`` inside S_degree, elements ordered with identity first."""
    ident = tuple(range(degree))
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = perm_compose(g, x)
                if y not in seen:
                    seen.add(y)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    index = {p: i for i, p in enumerate(elems)}
    table = tuple(tuple(index[perm_compose(p, q)] for q in elems) for p in elems)
    return FiniteGroup(table, tuple(elems))


def symmetric_group(n: int) -> FiniteGroup:
    ident = tuple(range(n))
    elems = [ident] + [p for p in itertools.permutations(range(n)) if p != ident]
    index = {p: i for i, p in enumerate(elems)}
    table = tuple(tuple(index[perm_compose(p, q)] for q in elems) for p in elems)
    return FiniteGroup(table, tuple(elems))


def subgroups(G: FiniteGroup) -> list[frozenset[int]]:
    """All subgroups of ``G`` as sets of element indices."""
    found: set[frozenset[int]] = set()
    n = G.order
    for r in range(0, 3):
        for gens in itertools.combinations(range(1, n), r):
            H = {0}
            frontier = [0]
            while frontier:
                x = frontier.pop()
                for g in gens:
                    y = G(x, g)
                    if y not in H:
                        H.add(y)
                        frontier.append(y)
            found.add(frozenset(H))
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    pairs = [(a, b) for a in range(G.order) for b in range(H.order)]
    index = {p: i for i, p in enumerate(pairs)}
    table = tuple(
        tuple(index[(G(a, c), H(b, d))] for (c, d) in pairs) for (a, b) in pairs
    )
    return FiniteGroup(table, tuple(pairs))


def small_groups(max_order: int) -> dict[str, FiniteGroup]:
    """One group per isomorphism type of order at most ``max_order`` (``max_order <= 7``)."""
    if max_order > 7:
        raise ValueError("only orders up to 7 are tabulated")
    out = {f"Z{n}": cyclic_group(n) for n in range(1, max_order + 1)}
    if max_order >= 4:
        out["Z2xZ2"] = direct_product(cyclic_group(2), cyclic_group(2))
    if max_order >= 6:
        out["S3"] = symmetric_group(3)
    return out
