"""Finite formal linear combinations with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Mapping


class FreeModuleElement:
    """An element of the free Q-module on hashable basis keys; zero terms are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Hashable, Any] | Iterable[tuple[Hashable, Any]] = ()) -> None:
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            acc[key] = acc.get(key, Fraction(0)) + Fraction(c)
        self._terms = {k: v for k, v in acc.items() if v != 0}

    @classmethod
    def basis(cls, key: Hashable) -> FreeModuleElement:
        return cls({key: 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, key: Hashable) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: FreeModuleElement) -> FreeModuleElement:
        return FreeModuleElement(list(self.items()) + list(other.items()))

    def __neg__(self) -> FreeModuleElement:
        return FreeModuleElement({k: -v for k, v in self.items()})

    def __sub__(self, other: FreeModuleElement) -> FreeModuleElement:
        return self + (-other)

    def __rmul__(self, scalar) -> FreeModuleElement:
        s = Fraction(scalar)
        return FreeModuleElement({k: s * v for k, v in self.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FreeModuleElement) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = [f"{v}*{k!r}" for k, v in sorted(self._terms.items(), key=lambda kv: repr(kv[0]))]
        return " + ".join(parts)

    def map(self, f: Callable[[Hashable], FreeModuleElement]) -> FreeModuleElement:
        """Linear extension of ``f`` defined on basis keys."""
        out: list = []
        for k, v in self.items():
            out.extend((k2, v * v2) for k2, v2 in f(k).items())
        return FreeModuleElement(out)

    def map_keys(self, f: Callable[[Hashable], Hashable]) -> FreeModuleElement:
        return FreeModuleElement((f(k), v) for k, v in self.items())

    def to_json(self, encode: Callable[[Hashable], Any] = repr) -> list:
        return [
            {"key": encode(k), "coefficient": str(v)}
            for k, v in sorted(self._terms.items(), key=lambda kv: repr(kv[0]))
        ]


def bilinear(a: FreeModuleElement, b: FreeModuleElement, f: Callable[[Hashable, Hashable], FreeModuleElement]) -> FreeModuleElement:
    out: list = []
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            out.extend((k, v1 * v2 * c) for k, c in f(k1, k2).items())
    return FreeModuleElement(out)


def tensor(a: FreeModuleElement, b: FreeModuleElement) -> FreeModuleElement:
    return FreeModuleElement(((k1, k2), v1 * v2) for k1, v1 in a.items() for k2, v2 in b.items())
