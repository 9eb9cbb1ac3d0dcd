"""Bounded models of Feynman categories and a checker for their axioms.

A model exposes a finite fragment of a strict monoidal category together with
its groupoid of basic objects.  Morphism composition is written in
diagrammatic order throughout: ``compose(f, g)`` is "first ``f``, then ``g``".
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Sequence


class FeynmanModel(ABC):
    """Finite fragment of a Feynman category ``(V, F, i)``.

    Objects are strict tensor words; ``word(X)`` returns the word of basic
    objects whose tensor product is ``X`` on the nose.
    """

    name: str = "?"
    symmetric: bool = True

    @abstractmethod
    def objects(self, bound: int) -> list: ...

    @abstractmethod
    def word(self, X) -> list: ...

    @abstractmethod
    def tensor_objects(self, objs: Sequence) -> Any: ...

    @abstractmethod
    def hom(self, X, Y) -> list: ...

    @abstractmethod
    def source(self, f) -> Any: ...

    @abstractmethod
    def target(self, f) -> Any: ...

    @abstractmethod
    def compose(self, f, g): ...

    @abstractmethod
    def identity(self, X): ...

    @abstractmethod
    def tensor(self, morphisms: Sequence): ...

    @abstractmethod
    def is_iso(self, f) -> bool: ...

    @abstractmethod
    def inverse(self, f): ...

    @abstractmethod
    def v_isos(self, a, b) -> list:
        """Isomorphisms between basic objects."""

    @abstractmethod
    def permutation(self, word: Sequence, perm: Sequence[int]):
        """The symmetry ``tensor(word) -> tensor(word[perm[0]], word[perm[1]], ...)``."""

    @abstractmethod
    def decompose(self, f) -> tuple[Any, list]:
        """Return ``(sigma, pieces)`` with ``f == compose(sigma, tensor(pieces))``.

        Each piece has a single basic object as target, in the order of
        ``word(target(f))``.
        """

    @abstractmethod
    def split(self, f, sources: Sequence | None, targets: Sequence) -> list | None:
        """Write ``f`` as ``tensor(pieces)`` along the given words, or return ``None``.

        ``sources=None`` lets the model infer the source word.
        """

    def word_permutation(self, sigma) -> list[int]:
        """For a symmetry returned by :meth:`decompose`: word position ``i`` goes to ``result[i]``."""
        raise NotImplementedError(f"{self.name} does not expose word permutations")

    def iso_objects(self, X) -> list:
        """Objects of the fragment isomorphic to ``X``."""
        return [X]


@dataclass
class AxiomReport:
    category: str
    bound: int
    passed: bool
    counts: dict = field(default_factory=dict)
    witness: str | None = None

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" witness: {self.witness}" if self.witness else ""
        return f"{self.category} (bound {self.bound}): {status} {self.counts}{extra}"


def _generated_isos(cat: FeynmanModel, X, Y) -> set:
    wx, wy = cat.word(X), cat.word(Y)
    if len(wx) != len(wy):
        return set()
    perms = itertools.permutations(range(len(wx))) if cat.symmetric else [tuple(range(len(wx)))]
    out = set()
    for perm in perms:
        permuted = [wx[i] for i in perm]
        choices = [cat.v_isos(a, b) for a, b in zip(permuted, wy)]
        if any(not c for c in choices):
            continue
        sym = cat.permutation(wx, perm)
        for vs in itertools.product(*choices):
            out.add(cat.compose(sym, cat.tensor(list(vs))))
    return out


def check_feynman_axioms(cat: FeynmanModel, bound: int) -> AxiomReport:
    """Verify the Feynman category axioms on every object and morphism up to ``bound``.

    (i) objects are tensor words of basic objects and the isomorphisms are
    exactly the symmetries composed with tensor products of basic isos;
    (ii) every morphism decomposes into basic morphisms, and any two
    decompositions are related by a unique family of isomorphisms;
    (iii) every hom-set in the fragment is finite (it was enumerated).
    """
    report = AxiomReport(cat.name, bound, True)
    counts = report.counts = {"objects": 0, "isos": 0, "morphisms": 0, "decompositions": 0}
    objs = cat.objects(bound)

    def fail(msg: str) -> AxiomReport:
        report.passed = False
        report.witness = msg
        return report

    for X in objs:
        counts["objects"] += 1
        if cat.tensor_objects(cat.word(X)) != X:
            return fail(f"object {X!r} is not the tensor product of its word")
        if cat.identity(X) not in cat.hom(X, X):
            return fail(f"identity of {X!r} missing")

    for X in objs:
        for Y in objs:
            isos = {f for f in cat.hom(X, Y) if cat.is_iso(f)}
            generated = _generated_isos(cat, X, Y)
            counts["isos"] += len(isos)
            if isos != generated:
                extra = sorted(map(repr, isos ^ generated))[:1]
                return fail(f"isomorphisms {X!r}->{Y!r} not generated by symmetries and basic isos: {extra}")

    iso_cache: dict = {}
    for X in objs:
        for Y in objs:
            for phi in cat.hom(X, Y):
                counts["morphisms"] += 1
                sigma, pieces = cat.decompose(phi)
                wy = cat.word(Y)
                if not cat.is_iso(sigma) or [cat.target(p) for p in pieces] != wy:
                    return fail(f"bad decomposition of {phi!r}")
                if cat.compose(sigma, cat.tensor(pieces)) != phi:
                    return fail(f"decomposition of {phi!r} does not recompose")
                base_sources = [cat.source(p) for p in pieces]
                if X not in iso_cache:
                    iso_cache[X] = [
                        (s, cat.inverse(s))
                        for Xp in cat.iso_objects(X)
                        for s in cat.hom(X, Xp)
                        if cat.is_iso(s)
                    ]
                for s, s_inv in iso_cache[X]:
                    other = cat.split(cat.compose(s_inv, phi), None, wy)
                    if other is None:
                        continue
                    counts["decompositions"] += 1
                    tau = cat.compose(cat.inverse(sigma), s)
                    link = cat.split(tau, base_sources, [cat.source(p) for p in other])
                    if link is None:
                        return fail(f"decompositions of {phi!r} not related by an isomorphism")
                    if any(
                        cat.compose(l, o) != p for l, o, p in zip(link, other, pieces)
                    ):
                        return fail(f"decompositions of {phi!r} not related compatibly")
    return report
