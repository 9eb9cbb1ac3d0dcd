"""Set-based Feynman categories on the skeletal objects ``n = {0, ..., n-1}``.

Covered: FinSet, FS (surjections), FI (injections), NCSet (maps with ordered
fibers), FS< (surjections with ordered fibers), the ordered variants Δ₊ (all
order-preserving maps), OS, OI, and the labeled injections FI_G and FI_d.
Elements are 0-based internally; :meth:`FiberedMap.from_fibers` accepts the
1-based notation used for hand-written examples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Sequence

from .feynman import FeynmanModel
from .groups import FiniteGroup

CATEGORY_TAGS = ("FinSet", "FS", "FI", "NCSet", "FS<", "Δ₊", "OS", "OI", "Δ₊S", "FI_G", "FI_d")


@dataclass(frozen=True)
class FiberedMap:
    """A map ``f: n -> m``, optionally with a linear order on every fiber.

    ``orders[t]`` lists the fiber ``f^{-1}(t)`` from smallest to largest.
    ``orders is None`` is a plain set map.
    """

    source: int
    target: int
    f: tuple[int, ...]
    orders: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self) -> None:
        if len(self.f) != self.source or any(not 0 <= x < self.target for x in self.f):
            raise ValueError("map values must lie in the target")
        if self.orders is not None:
            if len(self.orders) != self.target:
                raise ValueError("need one order per target element")
            for t, order in enumerate(self.orders):
                if sorted(order) != self.fiber(t):
                    raise ValueError(f"order on fiber {t} is not a linear order of that fiber")

    def fiber(self, t: int) -> list[int]:
        return [s for s, x in enumerate(self.f) if x == t]

    def fibers(self) -> list[list[int]]:
        return [self.fiber(t) for t in range(self.target)]

    @property
    def ordered(self) -> bool:
        return self.orders is not None

    def forget(self) -> FiberedMap:
        return FiberedMap(self.source, self.target, self.f)

    def is_surjective(self) -> bool:
        return set(self.f) == set(range(self.target))

    def is_injective(self) -> bool:
        return len(set(self.f)) == len(self.f)

    def is_monotone(self) -> bool:
        return all(a <= b for a, b in zip(self.f, self.f[1:]))

    def is_iso(self) -> bool:
        return self.source == self.target and self.is_injective()

    @classmethod
    def from_fibers(cls, fibers: Sequence[Sequence[int]], one_based: bool = True) -> FiberedMap:
        """Build an ordered map from its fibers, each listed in fiber order."""
        shift = 1 if one_based else 0
        n = sum(len(x) for x in fibers)
        f = [0] * n
        seen = set()
        for t, fib in enumerate(fibers):
            for s in fib:
                if s - shift in seen or not 0 <= s - shift < n:
                    raise ValueError("fibers must partition the source")
                seen.add(s - shift)
                f[s - shift] = t
        orders = tuple(tuple(s - shift for s in fib) for fib in fibers)
        return cls(n, len(fibers), tuple(f), orders)

    @classmethod
    def identity(cls, n: int, ordered: bool = False) -> FiberedMap:
        return cls(n, n, tuple(range(n)), tuple((i,) for i in range(n)) if ordered else None)

    def to_json(self) -> dict:
        out = {"source": self.source, "target": self.target, "f": list(self.f)}
        if self.orders is not None:
            out["orders"] = [list(o) for o in self.orders]
        return out

    @classmethod
    def from_json(cls, data: dict) -> FiberedMap:
        orders = data.get("orders")
        return cls(
            data["source"],
            data["target"],
            tuple(data["f"]),
            None if orders is None else tuple(tuple(o) for o in orders),
        )


def compose_maps(a: FiberedMap, b: FiberedMap) -> FiberedMap:
    """``b o a``; ordered maps compose their fiber orders lexicographically."""
    if a.target != b.source:
        raise ValueError(f"cannot compose {a.source}->{a.target} with {b.source}->{b.target}")
    f = tuple(b.f[x] for x in a.f)
    if a.orders is None and b.orders is None:
        return FiberedMap(a.source, b.target, f)
    if a.orders is None or b.orders is None:
        raise ValueError("cannot compose an ordered map with an unordered one")
    orders = tuple(
        tuple(s for t in b.orders[u] for s in a.orders[t]) for u in range(b.target)
    )
    return FiberedMap(a.source, b.target, f, orders)


def compose_ncset(a: FiberedMap, b: FiberedMap) -> FiberedMap:
    if not (a.ordered and b.ordered):
        raise ValueError("NCSet composition needs fiber orders on both maps")
    return compose_maps(a, b)


def tensor_maps(maps: Sequence[FiberedMap]) -> FiberedMap:
    """Skeletal disjoint union: the second summand is shifted past the first."""
    f: list[int] = []
    orders: list[tuple[int, ...]] = []
    src = tgt = 0
    ordered = [m.ordered for m in maps]
    if any(ordered) and not all(ordered):
        raise ValueError("cannot tensor ordered and unordered maps")
    for m in maps:
        f.extend(x + tgt for x in m.f)
        if m.orders is not None:
            orders.extend(tuple(s + src for s in o) for o in m.orders)
        src += m.source
        tgt += m.target
    return FiberedMap(src, tgt, tuple(f), tuple(orders) if maps and all(ordered) else None)


def fiber_decompose(phi: FiberedMap) -> list[FiberedMap]:
    """One piece ``f^{-1}(t) -> {t}`` per target element, as skeletal maps ``k -> 1``.

    Ordered maps keep their fiber order; the piece is the identity order
    ``0 < 1 < ... < k-1`` after renumbering the fiber in that order.
    """
    pieces = []
    for t in range(phi.target):
        k = len(phi.fiber(t))
        pieces.append(FiberedMap(k, 1, (0,) * k, (tuple(range(k)),) if phi.ordered else None))
    return pieces


def fiber_sorting(phi: FiberedMap) -> FiberedMap:
    """The bijection sending the source onto the concatenation of fibers."""
    seq = []
    for t in range(phi.target):
        seq.extend(phi.orders[t] if phi.ordered else phi.fiber(t))
    f = [0] * phi.source
    for pos, s in enumerate(seq):
        f[s] = pos
    return FiberedMap(phi.source, phi.source, tuple(f), tuple((s,) for s in seq) if phi.ordered else None)


def _inverse_bijection(phi: FiberedMap) -> FiberedMap:
    inv = [0] * phi.source
    for s, t in enumerate(phi.f):
        inv[t] = s
    orders = tuple((phi.f[s],) for s in range(phi.source)) if phi.ordered else None
    return FiberedMap(phi.target, phi.source, tuple(inv), orders)


# ---------------------------------------------------------------------------
# labeled injections


@dataclass(frozen=True)
class GroupLabeledInjection:
    """An injection ``R -> S`` with a group label on every element of ``R``."""

    source: int
    target: int
    f: tuple[int, ...]
    rho: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.f) != self.source or len(set(self.f)) != len(self.f):
            raise ValueError("f must be an injection")
        if any(not 0 <= x < self.target for x in self.f) or len(self.rho) != self.source:
            raise ValueError("bad injection data")

    def is_iso(self) -> bool:
        return self.source == self.target


def compose_fig(a: GroupLabeledInjection, b: GroupLabeledInjection, G: FiniteGroup) -> GroupLabeledInjection:
    """``(g, sigma) o (f, rho) = (g o f, tau)`` with ``tau(x) = sigma(f(x)) rho(x)``."""
    if a.target != b.source:
        raise ValueError("not composable")
    if any(not 0 <= x < G.order for x in a.rho + b.rho):
        raise ValueError("labels are not elements of the group")
    f = tuple(b.f[x] for x in a.f)
    tau = tuple(G(b.rho[a.f[x]], a.rho[x]) for x in range(a.source))
    return GroupLabeledInjection(a.source, b.target, f, tau)


@dataclass(frozen=True)
class ColoredInjection:
    """An injection ``R -> S`` with a color in ``{1..d}`` on every element missed."""

    source: int
    target: int
    f: tuple[int, ...]
    m: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if len(self.f) != self.source or len(set(self.f)) != len(self.f):
            raise ValueError("f must be an injection")
        missed = sorted(set(range(self.target)) - set(self.f))
        if [t for t, _ in self.m] != missed:
            raise ValueError("coloring must be defined exactly on the complement of the image")

    def coloring(self) -> dict[int, int]:
        return dict(self.m)

    def is_iso(self) -> bool:
        return self.source == self.target


def compose_fid(a: ColoredInjection, b: ColoredInjection) -> ColoredInjection:
    """``a: R -> S`` then ``b: S -> T``.

    Elements of ``T`` missed by the composite are either images of elements
    missed by ``a`` (carrying their ``a``-color) or missed by ``b`` (carrying
    their ``b``-color).
    """
    if a.target != b.source:
        raise ValueError("not composable")
    f = tuple(b.f[x] for x in a.f)
    p = dict(b.m)
    for s, c in a.m:
        p[b.f[s]] = c
    return ColoredInjection(a.source, b.target, f, tuple(sorted(p.items())))


# ---------------------------------------------------------------------------
# hom enumeration


def _maps(n: int, m: int) -> Iterable[tuple[int, ...]]:
    return itertools.product(range(m), repeat=n)


def _with_orders(n: int, m: int, f: tuple[int, ...]) -> Iterable[FiberedMap]:
    fibers = [[s for s in range(n) if f[s] == t] for t in range(m)]
    for orders in itertools.product(*(itertools.permutations(fib) for fib in fibers)):
        yield FiberedMap(n, m, f, tuple(orders))


def enumerate_hom(cat: str, n: int, m: int, *, group: FiniteGroup | None = None, d: int = 1, max_size: int = 6) -> list:
    """Every morphism ``n -> m`` in the named category, without duplicates."""
    if n > max_size or m > max_size:
        raise ValueError(f"sizes above the bound {max_size}")
    if cat not in CATEGORY_TAGS:
        raise ValueError(f"unknown category {cat!r}")
    if cat == "FI_G":
        if group is None:
            raise ValueError("FI_G needs a group")
        return [
            GroupLabeledInjection(n, m, f, rho)
            for f in itertools.permutations(range(m), n)
            for rho in itertools.product(range(group.order), repeat=n)
        ]
    if cat == "FI_d":
        out = []
        for f in itertools.permutations(range(m), n):
            missed = sorted(set(range(m)) - set(f))
            for cols in itertools.product(range(1, d + 1), repeat=len(missed)):
                out.append(ColoredInjection(n, m, f, tuple(zip(missed, cols))))
        return out
    plain = {
        "FinSet": lambda f: True,
        "FS": lambda f: set(f) == set(range(m)),
        "FI": lambda f: len(set(f)) == n,
        "NCSet": lambda f: True,
        "Δ₊S": lambda f: True,
        "FS<": lambda f: set(f) == set(range(m)),
        "Δ₊": lambda f: list(f) == sorted(f),
        "OS": lambda f: list(f) == sorted(f) and set(f) == set(range(m)),
        "OI": lambda f: list(f) == sorted(f) and len(set(f)) == n,
    }[cat]
    maps = [f for f in _maps(n, m) if plain(f)]
    if cat in ("NCSet", "Δ₊S", "FS<"):
        return [g for f in maps for g in _with_orders(n, m, f)]
    return [FiberedMap(n, m, f) for f in maps]


def hom_count(cat: str, n: int, m: int, **kw) -> int:
    return len(enumerate_hom(cat, n, m, **kw))


# ---------------------------------------------------------------------------
# planted forests


@dataclass(frozen=True)
class PlantedCorolla:
    """A planar planted corolla: a root ``root`` and leaves in planar order."""

    root: int
    leaves: tuple[int, ...]

    @property
    def arity(self) -> int:
        return len(self.leaves)


def to_planted_forest(phi: FiberedMap) -> list[PlantedCorolla]:
    """One planted corolla per target element, leaves in fiber order."""
    if not phi.ordered:
        raise ValueError("planted forests need fiber orders")
    return [PlantedCorolla(t, tuple(phi.orders[t])) for t in range(phi.target)]


def from_planted_forest(forest: Sequence[PlantedCorolla]) -> FiberedMap:
    roots = [c.root for c in forest]
    if roots != list(range(len(forest))):
        raise ValueError("roots must be 0..m-1 in order")
    return FiberedMap.from_fibers([c.leaves for c in forest], one_based=False)


# ---------------------------------------------------------------------------
# Feynman category models


class SetCategory(FeynmanModel):
    """The skeletal set categories; the basic objects are the single point ``1``."""

    ORDERED = {"NCSet", "FS<", "Δ₊S"}
    NON_SIGMA = {"Δ₊", "OS", "OI"}

    def __init__(self, tag: str) -> None:
        if tag not in CATEGORY_TAGS or tag in ("FI_G", "FI_d"):
            raise ValueError(f"unsupported tag {tag!r}")
        self.tag = tag
        self.name = tag
        self.symmetric = tag not in self.NON_SIGMA
        self.ordered = tag in self.ORDERED
        self._hom: dict[tuple[int, int], list] = {}

    def objects(self, bound: int) -> list[int]:
        return list(range(bound + 1))

    def word(self, X: int) -> list[int]:
        return [1] * X

    def tensor_objects(self, objs: Sequence[int]) -> int:
        return sum(objs)

    def hom(self, X: int, Y: int) -> list:
        key = (X, Y)
        if key not in self._hom:
            self._hom[key] = enumerate_hom(self.tag, X, Y)
        return self._hom[key]

    def source(self, f: FiberedMap) -> int:
        return f.source

    def target(self, f: FiberedMap) -> int:
        return f.target

    def compose(self, f: FiberedMap, g: FiberedMap) -> FiberedMap:
        return compose_maps(f, g)

    def identity(self, X: int) -> FiberedMap:
        return FiberedMap.identity(X, self.ordered)

    def tensor(self, morphisms: Sequence[FiberedMap]) -> FiberedMap:
        if not morphisms:
            return self.identity(0)
        return tensor_maps(morphisms)

    def is_iso(self, f: FiberedMap) -> bool:
        return f.is_iso()

    def inverse(self, f: FiberedMap) -> FiberedMap:
        return _inverse_bijection(f)

    def v_isos(self, a: int, b: int) -> list:
        return [self.identity(1)]

    def permutation(self, word: Sequence[int], perm: Sequence[int]) -> FiberedMap:
        n = len(word)
        f = [0] * n
        for new, old in enumerate(perm):
            f[old] = new
        return FiberedMap(n, n, tuple(f), tuple((perm[i],) for i in range(n)) if self.ordered else None)

    def word_permutation(self, sigma: FiberedMap) -> list[int]:
        return list(sigma.f)

    def decompose(self, f: FiberedMap) -> tuple[FiberedMap, list[FiberedMap]]:
        sigma = fiber_sorting(f) if self.symmetric else self.identity(f.source)
        return sigma, fiber_decompose(f)

    def split(self, f: FiberedMap, sources, targets) -> list | None:
        if any(t != 1 for t in targets) and sources is None:
            raise ValueError("set categories split along basic targets only")
        if sources is None:
            if not f.is_monotone():
                return None
            sources = [len(f.fiber(t)) for t in range(f.target)]
        if sum(sources) != f.source or sum(targets) != f.target:
            return None
        pieces = []
        s0 = t0 = 0
        for a, b in zip(sources, targets):
            vals = f.f[s0 : s0 + a]
            if any(not t0 <= x < t0 + b for x in vals):
                return None
            orders = None
            if f.ordered:
                orders = []
                for t in range(t0, t0 + b):
                    o = f.orders[t]
                    if any(not s0 <= s < s0 + a for s in o):
                        return None
                    orders.append(tuple(s - s0 for s in o))
                orders = tuple(orders)
            pieces.append(FiberedMap(a, b, tuple(x - t0 for x in vals), orders))
            s0 += a
            t0 += b
        return pieces


class LabeledInjectionCategory(FeynmanModel):
    """FI_G (group labels on the source) or FI_d (colors on the missed targets)."""

    def __init__(self, group: FiniteGroup | None = None, d: int | None = None) -> None:
        if (group is None) == (d is None):
            raise ValueError("give exactly one of group or d")
        self.group, self.d = group, d
        self.name = "FI_G" if group is not None else f"FI_{d}"
        self.symmetric = True
        self._hom: dict[tuple[int, int], list] = {}

    def objects(self, bound: int) -> list[int]:
        return list(range(bound + 1))

    def word(self, X: int) -> list[int]:
        return [1] * X

    def tensor_objects(self, objs: Sequence[int]) -> int:
        return sum(objs)

    def hom(self, X: int, Y: int) -> list:
        if (X, Y) not in self._hom:
            if self.group is not None:
                self._hom[X, Y] = enumerate_hom("FI_G", X, Y, group=self.group)
            else:
                self._hom[X, Y] = enumerate_hom("FI_d", X, Y, d=self.d)
        return self._hom[X, Y]

    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def compose(self, f, g):
        if self.group is not None:
            return compose_fig(f, g, self.group)
        return compose_fid(f, g)

    def identity(self, X: int):
        if self.group is not None:
            return GroupLabeledInjection(X, X, tuple(range(X)), (0,) * X)
        return ColoredInjection(X, X, tuple(range(X)), ())

    def tensor(self, morphisms):
        src = tgt = 0
        f: list[int] = []
        extra: list = []
        for m in morphisms:
            f.extend(x + tgt for x in m.f)
            if self.group is not None:
                extra.extend(m.rho)
            else:
                extra.extend((t + tgt, c) for t, c in m.m)
            src += m.source
            tgt += m.target
        if self.group is not None:
            return GroupLabeledInjection(src, tgt, tuple(f), tuple(extra))
        return ColoredInjection(src, tgt, tuple(f), tuple(extra))

    def is_iso(self, f) -> bool:
        return f.is_iso()

    def inverse(self, f):
        inv = [0] * f.source
        for s, t in enumerate(f.f):
            inv[t] = s
        if self.group is not None:
            rho = tuple(self.group.inverse(f.rho[inv[t]]) for t in range(f.source))
            return GroupLabeledInjection(f.source, f.source, tuple(inv), rho)
        return ColoredInjection(f.source, f.source, tuple(inv), ())

    def v_isos(self, a: int, b: int) -> list:
        if self.group is not None:
            return [GroupLabeledInjection(1, 1, (0,), (g,)) for g in range(self.group.order)]
        return [self.identity(1)]

    def permutation(self, word, perm):
        n = len(word)
        f = [0] * n
        for new, old in enumerate(perm):
            f[old] = new
        if self.group is not None:
            return GroupLabeledInjection(n, n, tuple(f), (0,) * n)
        return ColoredInjection(n, n, tuple(f), ())

    def word_permutation(self, sigma) -> list[int]:
        return list(sigma.f)

    def decompose(self, f):
        order = sorted(range(f.source), key=lambda s: f.f[s])
        sig = [0] * f.source
        for pos, s in enumerate(order):
            sig[s] = pos
        pieces = []
        hit = {t: s for s, t in enumerate(f.f)}
        color = dict(f.m) if self.group is None else {}
        for t in range(f.target):
            if self.group is not None:
                if t in hit:
                    pieces.append(GroupLabeledInjection(1, 1, (0,), (f.rho[hit[t]],)))
                else:
                    pieces.append(GroupLabeledInjection(0, 1, (), ()))
            else:
                if t in hit:
                    pieces.append(ColoredInjection(1, 1, (0,), ()))
                else:
                    pieces.append(ColoredInjection(0, 1, (), ((0, color[t]),)))
        sigma = self.permutation([1] * f.source, order)
        return sigma, pieces

    def split(self, f, sources, targets):
        if sources is None:
            if list(f.f) != sorted(f.f):
                return None
            hit = set(f.f)
            sources = [1 if t in hit else 0 for t in range(f.target)]
        if sum(sources) != f.source or sum(targets) != f.target:
            return None
        pieces = []
        s0 = t0 = 0
        color = dict(f.m) if self.group is None else {}
        for a, b in zip(sources, targets):
            vals = f.f[s0 : s0 + a]
            if any(not t0 <= x < t0 + b for x in vals):
                return None
            g = tuple(x - t0 for x in vals)
            if self.group is not None:
                pieces.append(GroupLabeledInjection(a, b, g, f.rho[s0 : s0 + a]))
            else:
                missed = sorted(set(range(b)) - set(g))
                pieces.append(ColoredInjection(a, b, g, tuple((t, color[t + t0]) for t in missed)))
            s0 += a
            t0 += b
        return pieces


def forget_labels(phi) -> FiberedMap:
    """Underlying plain injection of an FI_G or FI_d morphism."""
    return FiberedMap(phi.source, phi.target, phi.f)


def ncset_hom_count(n: int, m: int) -> int:
    """Closed form ``m (m+1) ... (m+n-1)`` for ordered-fiber maps ``n -> m``."""
    if m == 0:
        return 1 if n == 0 else 0
    return factorial(m + n - 1) // factorial(m - 1)
