"""Bialgebras of morphisms: product by disjoint union, coproduct by summing over factorizations.

Two bases are supported.  ``"OS"`` (ordered surjections) works with
literal morphisms.  ``"FS"`` and ``"FS<"`` work on isomorphism classes of
surjections, keyed by the sorted tuple of fiber sizes, with the coproduct
summing over orbits of factorizations under automorphisms of the middle
object.  Categories with factorizations through arbitrarily large objects
are rejected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Hashable, Iterable

from .finsets import FiberedMap, compose_maps, enumerate_hom, tensor_maps
from .linear import FreeModuleElement, bilinear, tensor

LITERAL = ("OS",)
CLASSES = ("FS", "FS<")


class NotDecompositionFinite(ValueError):
    def __init__(self, message: str, witness) -> None:
        super().__init__(message)
        self.witness = witness


# ---------------------------------------------------------------------------
# basis helpers


def os_morphism(sizes: Iterable[int]) -> FiberedMap:
    """The ordered surjection whose consecutive fibers have the given sizes."""
    f = [t for t, k in enumerate(sizes) for _ in range(k)]
    if any(k < 1 for k in sizes):
        raise ValueError("fibers of a surjection are nonempty")
    return FiberedMap(len(f), len(list(sizes)), tuple(f))


def fiber_sizes(phi: FiberedMap) -> tuple[int, ...]:
    return tuple(len(phi.fiber(t)) for t in range(phi.target))


def class_key(phi: FiberedMap) -> tuple[int, ...]:
    """Isomorphism class of a surjection under relabeling source and target."""
    return tuple(sorted(fiber_sizes(phi)))


def representative(cat: str, key: tuple[int, ...]) -> FiberedMap:
    phi = os_morphism(key)
    if cat == "FS<":
        return FiberedMap(phi.source, phi.target, phi.f, tuple(tuple(phi.fiber(t)) for t in range(phi.target)))
    return phi


def is_identity_key(cat: str, key) -> bool:
    if cat in LITERAL:
        return key.source == key.target
    return all(k == 1 for k in key)


def unit_key(cat: str):
    return FiberedMap(0, 0, ()) if cat in LITERAL else ()


def basis_keys(cat: str, max_source: int) -> list:
    """Every basis key whose source has at most ``max_source`` points."""
    out = []
    for n in range(max_source + 1):
        if cat in LITERAL:
            for m in range(n + 1):
                out.extend(enumerate_hom(cat, n, m))
        else:
            out.extend(_partitions(n))
    return out


def _partitions(n: int, largest: int | None = None) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    top = n if largest is None else min(largest, n)
    out = []
    for k in range(top, 0, -1):
        out.extend(tuple(sorted((k,) + rest)) for rest in _partitions(n - k, k))
    return sorted(set(out))


def encode_key(cat: str, key) -> str:
    sizes = fiber_sizes(key) if cat in LITERAL else key
    return "+".join(map(str, sizes)) if sizes else "0"


def encode_pair(cat: str, pair) -> str:
    return f"{encode_key(cat, pair[0])} ⊗ {encode_key(cat, pair[1])}"


# ---------------------------------------------------------------------------
# algebra


def product_keys(cat: str, a, b) -> Hashable:
    if cat in LITERAL:
        return tensor_maps([a, b])
    return tuple(sorted(a + b))


def product(cat: str, a: FreeModuleElement, b: FreeModuleElement) -> FreeModuleElement:
    return bilinear(a, b, lambda x, y: FreeModuleElement.basis(product_keys(cat, x, y)))


def tensor_product(cat: str, a: FreeModuleElement, b: FreeModuleElement) -> FreeModuleElement:
    """Multiplication on the tensor square: ``(a ⊗ b)(c ⊗ d) = ac ⊗ bd``."""

    def mult(x, y):
        return FreeModuleElement.basis((product_keys(cat, x[0], y[0]), product_keys(cat, x[1], y[1])))

    return bilinear(a, b, mult)


def counit(cat: str, x: FreeModuleElement) -> Fraction:
    return sum((v for k, v in x.items() if is_identity_key(cat, k)), Fraction(0))


def decomposition_finite_witness(cat: str, phi: FiberedMap):
    """A factorization through an object larger than both ends, if one exists."""
    k = max(phi.source, phi.target) + 1
    for b in enumerate_hom(cat, phi.source, k):
        for a in enumerate_hom(cat, k, phi.target):
            if compose_maps(b, a) == phi:
                return (a, b)
    return None


def _check_finite(cat: str, phi: FiberedMap) -> None:
    witness = decomposition_finite_witness(cat, phi)
    if witness is not None:
        raise NotDecompositionFinite(
            f"{phi.source}->{phi.target} in {cat} factors through objects of every larger size",
            witness,
        )


def factorizations(cat: str, phi: FiberedMap, k: int):
    """Pairs ``(first, second)`` of surjections through ``k`` with ``second ∘ first = φ``.

    A surjective first factor determines the underlying map of the second.
    """
    for first in enumerate_hom(cat, phi.source, k):
        second = [None] * k
        for s, t in enumerate(first.f):
            if second[t] not in (None, phi.f[s]):
                break
            second[t] = phi.f[s]
        else:
            f = tuple(second)
            if phi.orders is None:
                candidates = [FiberedMap(k, phi.target, f)] if set(f) == set(range(phi.target)) else []
            else:
                candidates = [
                    g for g in enumerate_hom(cat, k, phi.target) if g.f == f
                ]
            for g in candidates:
                if compose_maps(first, g) == phi:
                    yield first, g


@lru_cache(maxsize=None)
def _literal_coproduct(cat: str, phi: FiberedMap) -> FreeModuleElement:
    terms = []
    for k in range(phi.target, phi.source + 1):
        for first, second in factorizations(cat, phi, k):
            terms.append(((second, first), 1))
    return FreeModuleElement(terms)


def _permutation(cat: str, sigma: tuple[int, ...]) -> FiberedMap:
    k = len(sigma)
    if cat == "FS<":
        inv = [0] * k
        for s, t in enumerate(sigma):
            inv[t] = s
        return FiberedMap(k, k, sigma, tuple((inv[t],) for t in range(k)))
    return FiberedMap(k, k, sigma)


@lru_cache(maxsize=None)
def _class_coproduct(cat: str, key: tuple[int, ...]) -> FreeModuleElement:
    phi = representative(cat, key)
    terms = []
    for k in range(phi.target, phi.source + 1):
        perms = [(_permutation(cat, s), _permutation(cat, _invert(s))) for s in itertools.permutations(range(k))]
        seen = set()
        for first, second in factorizations(cat, phi, k):
            if (first, second) in seen:
                continue
            for s, s_inv in perms:
                seen.add((compose_maps(first, s), compose_maps(s_inv, second)))
            terms.append(((class_key(second), class_key(first)), 1))
    return FreeModuleElement(terms)


def _invert(sigma: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(sigma)
    for s, t in enumerate(sigma):
        inv[t] = s
    return tuple(inv)


def coproduct_key(cat: str, key) -> FreeModuleElement:
    """``Δ(φ) = Σ φ₀ ⊗ φ₁`` over factorizations ``φ = φ₀ ∘ φ₁`` (``φ₁`` applied first)."""
    if cat in LITERAL:
        return _literal_coproduct(cat, key)
    if cat in CLASSES:
        return _class_coproduct(cat, key)
    if isinstance(key, FiberedMap):
        _check_finite(cat, key)
    raise ValueError(f"no coproduct for {cat!r}; supported: {LITERAL + CLASSES}")


def coproduct(cat: str, x: FreeModuleElement, delta: Callable | None = None) -> FreeModuleElement:
    d = delta or (lambda k: coproduct_key(cat, k))
    return x.map(d)


# ---------------------------------------------------------------------------
# axioms


@dataclass
class AxiomReport:
    name: str
    passed: bool
    checked: int
    witness: object = None

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" witness: {self.witness}" if self.witness is not None else ""
        return f"{self.name}: {status} ({self.checked} cases){extra}"


def _triples(x: FreeModuleElement, left: bool) -> FreeModuleElement:
    if left:
        return x.map_keys(lambda k: (k[0][0], k[0][1], k[1]))
    return x.map_keys(lambda k: (k[0], k[1][0], k[1][1]))


def check_coassociativity(cat: str, bound: int) -> AxiomReport:
    n = 0
    for key in basis_keys(cat, bound):
        d = coproduct_key(cat, key)
        left = _triples(d.map(lambda p: tensor(coproduct_key(cat, p[0]), FreeModuleElement.basis(p[1]))), True)
        right = _triples(d.map(lambda p: tensor(FreeModuleElement.basis(p[0]), coproduct_key(cat, p[1]))), False)
        n += 1
        if left != right:
            return AxiomReport("coassociativity", False, n, encode_key(cat, key))
    return AxiomReport("coassociativity", True, n)


def check_counit(cat: str, bound: int) -> AxiomReport:
    n = 0
    for key in basis_keys(cat, bound):
        d = coproduct_key(cat, key)
        one = FreeModuleElement.basis(key)
        left = FreeModuleElement((k[1], v) for k, v in d.items() if is_identity_key(cat, k[0]))
        right = FreeModuleElement((k[0], v) for k, v in d.items() if is_identity_key(cat, k[1]))
        n += 1
        if left != one or right != one:
            return AxiomReport("counit", False, n, encode_key(cat, key))
    return AxiomReport("counit", True, n)


def check_bialgebra(cat: str, bound: int, delta: Callable | None = None) -> AxiomReport:
    """``Δ(φ·ψ) = Δ(φ)·Δ(ψ)`` for all pairs whose product has at most ``bound`` source points."""
    d = delta or (lambda k: coproduct_key(cat, k))
    keys = basis_keys(cat, bound)
    n = 0
    for a in keys:
        for b in keys:
            prod = product_keys(cat, a, b)
            size = prod.source if cat in LITERAL else sum(prod)
            if size > bound:
                continue
            n += 1
            if d(prod) != tensor_product(cat, d(a), d(b)):
                return AxiomReport("bialgebra", False, n, (encode_key(cat, a), encode_key(cat, b)))
    return AxiomReport("bialgebra", True, n)


def dual_pairing_check(bound: int) -> AxiomReport:
    """OS: the coefficient of ``ψ₀ ⊗ ψ₁`` in ``Δφ`` is 1 exactly when ``ψ₀ ∘ ψ₁ = φ``."""
    n = 0
    for phi in basis_keys("OS", bound):
        d = coproduct_key("OS", phi)
        for k in range(bound + 1):
            for first in enumerate_hom("OS", phi.source, k):
                for second in enumerate_hom("OS", k, phi.target):
                    n += 1
                    expected = 1 if compose_maps(first, second) == phi else 0
                    if d.coefficient((second, first)) != expected:
                        return AxiomReport("dual pairing", False, n, encode_key("OS", phi))
    return AxiomReport("dual pairing", True, n)


def drop_one_term(cat: str, key=None) -> Callable:
    """A deliberately wrong coproduct: ``Δ(key)`` loses its term with an identity on the left.

    The default key is the product of the two-point fold with a one-point identity.
    """
    target = key if key is not None else (os_morphism([2, 1]) if cat in LITERAL else (1, 2))

    def delta(k):
        d = coproduct_key(cat, k)
        if k != target:
            return d
        bad = sorted((p for p in d.terms if is_identity_key(cat, p[0])), key=repr)
        return d - FreeModuleElement.basis(bad[0])

    return delta


# ---------------------------------------------------------------------------
# Hopf quotient


class HopfQuotient:
    """Quotient by the ideal identifying every identity with the unit.

    Basis keys are tuples of fiber sizes at least 2: in target order for
    ``OS`` (noncommutative), sorted for ``FS`` (commutative).  The grading
    is ``|source| - |target|``.
    """

    def __init__(self, cat: str = "OS") -> None:
        if cat not in ("OS", "FS"):
            raise ValueError("the quotient is implemented for OS and FS")
        self.cat = cat

    def reduce_key(self, key) -> tuple[int, ...]:
        sizes = fiber_sizes(key) if self.cat in LITERAL else key
        kept = tuple(k for k in sizes if k != 1)
        return kept if self.cat == "OS" else tuple(sorted(kept))

    def project(self, x: FreeModuleElement) -> FreeModuleElement:
        return x.map_keys(self.reduce_key)

    def project_pairs(self, x: FreeModuleElement) -> FreeModuleElement:
        return x.map_keys(lambda p: (self.reduce_key(p[0]), self.reduce_key(p[1])))

    def lift(self, q: tuple[int, ...]):
        return os_morphism(q) if self.cat == "OS" else tuple(sorted(q))

    @staticmethod
    def degree(q: tuple[int, ...]) -> int:
        return sum(k - 1 for k in q)

    def keys(self, max_degree: int) -> list[tuple[int, ...]]:
        """All basis keys of degree at most ``max_degree``."""
        out = []
        for d in range(max_degree + 1):
            out.extend(self._keys_of_degree(d))
        return out

    def _keys_of_degree(self, d: int) -> list[tuple[int, ...]]:
        if d == 0:
            return [()]
        out = []
        for first in range(2, d + 2):
            out.extend((first,) + rest for rest in self._keys_of_degree(d - first + 1))
        if self.cat == "FS":
            out = sorted(set(tuple(sorted(q)) for q in out))
        return out

    def mult(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return a + b if self.cat == "OS" else tuple(sorted(a + b))

    def product(self, x: FreeModuleElement, y: FreeModuleElement) -> FreeModuleElement:
        return bilinear(x, y, lambda a, b: FreeModuleElement.basis(self.mult(a, b)))

    def coproduct(self, q: tuple[int, ...]) -> FreeModuleElement:
        return self.project_pairs(coproduct_key(self.cat, self.lift(q)))

    def check_connected(self, max_degree: int) -> None:
        for n in range(max_degree + 1):
            for key in basis_keys(self.cat, n):
                if self.degree(self.reduce_key(key)) == 0 and self.reduce_key(key) != ():
                    raise ValueError(f"degree-zero class {key} besides the unit")

    def antipode(self, q: tuple[int, ...]) -> FreeModuleElement:
        return self._antipode(q)

    @lru_cache(maxsize=None)
    def _antipode(self, q: tuple[int, ...]) -> FreeModuleElement:
        if q == ():
            return FreeModuleElement.basis(())
        out = FreeModuleElement()
        for (left, right), c in self.coproduct(q).items():
            if right == ():
                continue
            if self.degree(left) >= self.degree(q):
                raise ValueError("grading is not connected")
            out = out - c * self.product(self._antipode(left), FreeModuleElement.basis(right))
        return out

    def check_antipode(self, max_degree: int) -> AxiomReport:
        n = 0
        for q in self.keys(max_degree):
            eps = FreeModuleElement.basis(()) if q == () else FreeModuleElement()
            d = self.coproduct(q)
            left = FreeModuleElement()
            right = FreeModuleElement()
            for (a, b), c in d.items():
                left = left + c * self.product(self.antipode(a), FreeModuleElement.basis(b))
                right = right + c * self.product(FreeModuleElement.basis(a), self.antipode(b))
            n += 1
            if left != eps or right != eps:
                return AxiomReport("antipode", False, n, q)
        return AxiomReport("antipode", True, n)

    def ideal_generators(self, bound: int) -> list[FreeModuleElement]:
        """``id_n / |Aut(n)| - id_0`` for OS (trivial automorphisms) and ``[id_n] - [id_0]`` for FS."""
        out = []
        for n in range(1, bound + 1):
            if self.cat == "OS":
                ident = FiberedMap.identity(n)
                weight = Fraction(1, len([p for p in enumerate_hom("OS", n, n) if p.is_iso()]))
                out.append(weight * FreeModuleElement.basis(ident) - FreeModuleElement.basis(unit_key("OS")))
            else:
                out.append(FreeModuleElement.basis((1,) * n) - FreeModuleElement.basis(()))
        return out

    def check_coideal(self, bound: int) -> AxiomReport:
        """Generators vanish under the counit and their coproduct dies in the quotient square."""
        n = 0
        for g in self.ideal_generators(bound):
            n += 1
            if counit(self.cat, g) != 0 or not self.project_pairs(coproduct(self.cat, g)).is_zero():
                return AxiomReport("coideal", False, n, g)
        return AxiomReport("coideal", True, n)

    def antipode_table(self, max_degree: int) -> dict[tuple[int, ...], FreeModuleElement]:
        return {q: self.antipode(q) for q in self.keys(max_degree)}
