"""Decorations by set-valued ops, the forgetful cover, and cover detection.

A :class:`SetOp` assigns a finite set to each basic object and, to each basic
morphism, a map from the product of its source sets to its target set.  The
value on a general morphism comes from its decomposition into a symmetry
followed by basic morphisms, so strong monoidality holds by construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from . import graphs
from .aggregates import GraphCategory, RootedCorollaCategory, tree_tail_cycle
from .feynman import FeynmanModel
from .finsets import FiberedMap, SetCategory


class NotFunctorialError(ValueError):
    """Raised when an op fails functoriality; ``witness`` names the failing data."""

    def __init__(self, message: str, witness: Any = None) -> None:
        super().__init__(message)
        self.witness = witness


@dataclass
class SetOp:
    """A set-valued op on a bounded Feynman category model.

    ``values(b)`` lists the decorations of the basic object ``b``.
    ``act(piece, block)`` maps the decorations of the source word of a basic
    morphism to a decoration of its target.  ``admissible(piece, block)``
    optionally restricts which morphisms lift (the ghost-edge conditions of
    directed and colored graphs).
    """

    name: str
    base: FeynmanModel
    values: Callable[[Any], Sequence]
    act: Callable[[Any, tuple], Any]
    admissible: Callable[[Any, tuple], bool] | None = None

    def on_object(self, X) -> list[tuple]:
        """Decorations of ``X``: the product over its word."""
        return list(itertools.product(*(self.values(b) for b in self.base.word(X))))

    def apply(self, phi, a: tuple) -> tuple | None:
        """The image of ``a`` under ``phi``, or ``None`` if ``phi`` does not lift at ``a``."""
        cat = self.base
        sigma, pieces = cat.decompose(phi)
        perm = cat.word_permutation(sigma)
        moved: list = [None] * len(a)
        for i, x in enumerate(a):
            moved[perm[i]] = x
        out = []
        pos = 0
        for p in pieces:
            k = len(cat.word(cat.source(p)))
            block = tuple(moved[pos : pos + k])
            pos += k
            if self.admissible is not None and not self.admissible(p, block):
                return None
            out.append(self.act(p, block))
        return tuple(out)


def functoriality_witness(op: SetOp, bound: int) -> str | None:
    """First failure of identity or composition preservation up to ``bound``, if any."""
    cat = op.base
    objs = cat.objects(bound)
    decos = {X: op.on_object(X) for X in objs}
    for X in objs:
        for a in decos[X]:
            if op.apply(cat.identity(X), a) != a:
                return f"identity of {X!r} moves {a!r}"
    for X in objs:
        for Y in objs:
            first = cat.hom(X, Y)
            if not first:
                continue
            images = {(f, a): op.apply(f, a) for f in first for a in decos[X]}
            for Z in objs:
                for g in cat.hom(Y, Z):
                    for f in first:
                        fg = cat.compose(f, g)
                        for a in decos[X]:
                            mid = images[f, a]
                            stepwise = None if mid is None else op.apply(g, mid)
                            if op.apply(fg, a) != stepwise:
                                return f"composite of {f!r} then {g!r} at {a!r}"
    return None


@dataclass(frozen=True)
class DecoratedMorphism:
    base: Any
    source: tuple
    target: tuple


class DecoratedCategory(FeynmanModel):
    """Pairs ``(X, a)`` with ``a`` a decoration of ``X``; morphisms are those of the base carrying ``a`` to ``b``."""

    def __init__(self, op: SetOp) -> None:
        self.op = op
        self.base = op.base
        self.name = f"{self.base.name}_dec[{op.name}]"
        self.symmetric = self.base.symmetric
        self._hom: dict = {}

    def objects(self, bound: int) -> list[tuple]:
        return [(X, a) for X in self.base.objects(bound) for a in self.op.on_object(X)]

    def word(self, X):
        base, a = X
        return [(b, (x,)) for b, x in zip(self.base.word(base), a)]

    def tensor_objects(self, objs):
        return (
            self.base.tensor_objects([o[0] for o in objs]),
            tuple(x for o in objs for x in o[1]),
        )

    def _lift(self, f, source) -> DecoratedMorphism | None:
        b = self.op.apply(f, source[1])
        if b is None:
            return None
        return DecoratedMorphism(f, source, (self.base.target(f), b))

    def hom(self, X, Y) -> list:
        if (X, Y) not in self._hom:
            out = []
            for f in self.base.hom(X[0], Y[0]):
                m = self._lift(f, X)
                if m is not None and m.target == Y:
                    out.append(m)
            self._hom[X, Y] = out
        return self._hom[X, Y]

    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def compose(self, f, g):
        if f.target != g.source:
            raise ValueError("decorations do not match")
        return DecoratedMorphism(self.base.compose(f.base, g.base), f.source, g.target)

    def identity(self, X):
        return DecoratedMorphism(self.base.identity(X[0]), X, X)

    def tensor(self, morphisms):
        return DecoratedMorphism(
            self.base.tensor([m.base for m in morphisms]),
            self.tensor_objects([m.source for m in morphisms]),
            self.tensor_objects([m.target for m in morphisms]),
        )

    def is_iso(self, f) -> bool:
        return self.base.is_iso(f.base)

    def inverse(self, f):
        return DecoratedMorphism(self.base.inverse(f.base), f.target, f.source)

    def v_isos(self, a, b) -> list:
        out = []
        for f in self.base.v_isos(a[0], b[0]):
            m = self._lift(f, a)
            if m is not None and m.target == b:
                out.append(m)
        return out

    def permutation(self, word, perm):
        X = self.tensor_objects(word)
        Xp = self.tensor_objects([word[i] for i in perm])
        return DecoratedMorphism(self.base.permutation([w[0] for w in word], perm), X, Xp)

    def word_permutation(self, sigma) -> list[int]:
        return self.base.word_permutation(sigma.base)

    def decompose(self, f):
        sigma, pieces = self.base.decompose(f.base)
        dsigma = self._lift(sigma, f.source)
        return dsigma, self._decorate_pieces(pieces, dsigma.target[1])

    def _decorate_pieces(self, pieces, a: tuple) -> list:
        out = []
        pos = 0
        for p in pieces:
            k = len(self.base.word(self.base.source(p)))
            src = (self.base.source(p), tuple(a[pos : pos + k]))
            pos += k
            out.append(self._lift(p, src))
        return out

    def split(self, f, sources, targets):
        base_sources = None if sources is None else [s[0] for s in sources]
        pieces = self.base.split(f.base, base_sources, [t[0] for t in targets])
        if pieces is None:
            return None
        out = self._decorate_pieces(pieces, f.source[1])
        if any(m is None for m in out) or [m.target for m in out] != list(targets):
            return None
        if sources is not None and [m.source for m in out] != list(sources):
            return None
        return out

    def iso_objects(self, X):
        found = set()
        for Xp in self.base.iso_objects(X[0]):
            for s in self.base.hom(X[0], Xp):
                if self.base.is_iso(s):
                    b = self.op.apply(s, X[1])
                    if b is not None:
                        found.add((Xp, b))
        return sorted(found, key=repr)


def decorate(op: SetOp, bound: int = 3, check: bool = True) -> DecoratedCategory:
    """The decorated category of ``op``; raises :class:`NotFunctorialError` if ``op`` is not a functor."""
    if check:
        witness = functoriality_witness(op, bound)
        if witness is not None:
            raise NotFunctorialError(f"{op.name} is not functorial: {witness}", witness)
    return DecoratedCategory(op)


# ---------------------------------------------------------------------------
# functors and covers


@dataclass
class Functor:
    name: str
    source: FeynmanModel
    target: FeynmanModel
    on_objects: Callable[[Any], Any]
    on_morphisms: Callable[[Any], Any]


@dataclass
class FiberOp:
    """The op recovered from a cover: fibers over objects and unique-lift transport."""

    fibers: dict
    transport: dict = field(default_factory=dict)

    def apply(self, phi, lifted_source):
        return self.transport[phi, lifted_source]


@dataclass
class CoverReport:
    functor: str
    bound: int
    is_cover: bool
    witness: str | None = None
    op: FiberOp | None = None
    counts: dict = field(default_factory=dict)

    def __str__(self) -> str:
        verdict = "cover" if self.is_cover else "not a cover"
        extra = f" witness: {self.witness}" if self.witness else ""
        return f"{self.functor} (bound {self.bound}): {verdict} {self.counts}{extra}"


def check_cover(F: Functor, bound: int, sources: Sequence | None = None) -> CoverReport:
    """Check lift existence and source-determined uniqueness for every morphism out of the image.

    ``sources`` restricts which lifted objects are used as sources; lifts
    may still land anywhere in ``F.source.objects(bound)``.  This is how
    ops with unbounded labels (genus) are checked on a truncation.
    """
    report = CoverReport(F.name, bound, True)
    src_objs = F.source.objects(bound)
    fibers: dict = {}
    for Xh in src_objs:
        fibers.setdefault(F.on_objects(Xh), []).append(Xh)
    op = FiberOp(fibers)
    tgt_objs = F.target.objects(bound)
    starts = src_objs if sources is None else list(sources)
    counts = report.counts = {"lifted_objects": len(src_objs), "morphisms": 0}
    for Xh in starts:
        X = F.on_objects(Xh)
        for Y in tgt_objs:
            lifts: dict = {}
            for Yh in fibers.get(Y, []):
                for m in F.source.hom(Xh, Yh):
                    lifts.setdefault(F.on_morphisms(m), []).append(m)
            for phi in F.target.hom(X, Y):
                counts["morphisms"] += 1
                found = lifts.get(phi, [])
                if not found:
                    report.is_cover = False
                    report.witness = f"{phi!r} has no lift from {Xh!r}"
                    return report
                if len(found) > 1:
                    report.is_cover = False
                    report.witness = f"{phi!r} has {len(found)} lifts from {Xh!r}"
                    return report
                op.transport[phi, Xh] = F.source.target(found[0])
    report.op = op
    return report


def forgetful(dec: DecoratedCategory) -> Functor:
    return Functor(
        f"forget {dec.name}",
        dec,
        dec.base,
        lambda X: X[0],
        lambda m: m.base,
    )


def recovered_matches(dec: DecoratedCategory, report: CoverReport) -> bool:
    """Whether the op recovered by :func:`check_cover` is the decorating op, up to ``(X, a) <-> a``."""
    if not report.is_cover or report.op is None:
        return False
    op = dec.op
    for X, fiber in report.op.fibers.items():
        if sorted(a for _, a in fiber) != sorted(op.on_object(X)):
            return False
    # The transport table only records what check_cover visited.
    for (phi, Xh), Yh in report.op.transport.items():
        if op.apply(phi, Xh[1]) != Yh[1]:
            return False
    return True


def set_inclusion(sub: str, ambient: str) -> Functor:
    """The inclusion of one skeletal set category into another."""
    return Functor(
        f"{sub} -> {ambient}",
        SetCategory(sub),
        SetCategory(ambient),
        lambda n: n,
        lambda f: f.forget() if f.ordered else f,
    )


# ---------------------------------------------------------------------------
# built-in decorations


def _local(g: graphs.Graph) -> dict[int, tuple[int, int]]:
    """Flag id to ``(vertex, position among the vertex's flags)``."""
    return {f: (v, i) for v in g.vertices for i, f in enumerate(g.flags_at(v))}


def _target_flags(piece) -> list[int]:
    (w,) = piece.target.vertices
    return piece.target.flags_at(w)


def assoc_op(max_vertices: int = 3) -> SetOp:
    """Orders on the inputs of rooted corollas; grafting concatenates orders along the tree."""
    base = RootedCorollaCategory(max_vertices)

    def values(b):
        (n,) = b
        return [tuple(p) for p in itertools.permutations(range(1, n))]

    def act(piece, block):
        src = piece.source
        cyclic = {}
        for v in sorted(src.vertices):
            fl = src.flags_at(v)
            cyclic[v] = [fl[0]] + [fl[i] for i in block[v]]
        walk = tree_tail_cycle(graphs.ghost_graph(piece), cyclic)
        tflags = _target_flags(piece)
        back = {s: t for t, s in piece.flag_inj.items()}
        k = walk.index(piece.flag_inj[tflags[0]])
        walk = walk[k + 1 :] + walk[:k]
        pos = {f: i for i, f in enumerate(tflags)}
        return tuple(pos[back[s]] for s in walk)

    return SetOp("Assoc", base, values, act)


def cyc_assoc_op(max_vertices: int = 3) -> SetOp:
    """Cyclic orders on all flags, composed by splicing around the ghost tree."""
    base = GraphCategory(max_vertices, "tree")

    def values(b):
        (n,) = b
        if n == 0:
            return [()]
        return [(0,) + tuple(p) for p in itertools.permutations(range(1, n))]

    def act(piece, block):
        src = piece.source
        cyclic = {v: [src.flags_at(v)[i] for i in block[v]] for v in sorted(src.vertices)}
        walk = tree_tail_cycle(graphs.ghost_graph(piece), cyclic)
        tflags = _target_flags(piece)
        if not tflags:
            return ()
        back = {s: t for t, s in piece.flag_inj.items()}
        pos = {f: i for i, f in enumerate(tflags)}
        seq = [pos[back[s]] for s in walk]
        k = seq.index(0)
        return tuple(seq[k:] + seq[:k])

    return SetOp("CycAssoc", base, values, act)


def _label_op(
    name: str,
    labels: Sequence,
    partner: Callable[[Any], Any],
    max_vertices: int,
    restricted: bool,
) -> SetOp:
    base = GraphCategory(max_vertices)

    def values(b):
        (n,) = b
        return list(itertools.product(labels, repeat=n))

    def label_of(piece, block):
        loc = _local(piece.source)
        return {f: block[v][i] for f, (v, i) in loc.items()}

    def act(piece, block):
        lab = label_of(piece, block)
        return tuple(lab[piece.flag_inj[t]] for t in _target_flags(piece))

    def admissible(piece, block):
        lab = label_of(piece, block)
        return all(lab[b] == partner(lab[a]) for a, b in piece.ghost_involution.items())

    return SetOp(name, base, values, act, admissible if restricted else None)


def direction_op(max_vertices: int = 3, restricted: bool = True) -> SetOp:
    """Flags labelled out (0) or in (1); ghost edges join an out flag to an in flag.

    With ``restricted=False`` any flags may be glued; the gluing condition
    cuts out a wide subcategory, which is no longer a cover of the base.
    """
    return _label_op("Direction", (0, 1), lambda x: 1 - x, max_vertices, restricted)


def color_op(colors: Sequence = (0, 1), max_vertices: int = 3, restricted: bool = True) -> SetOp:
    """Flags labelled by colors; ghost edges join flags of the same color."""
    return _label_op("Color", tuple(colors), lambda x: x, max_vertices, restricted)


def genus_op(max_genus: int = 1, max_vertices: int = 3) -> SetOp:
    """Genus labels on connected ghost graphs: labels add, each independent loop adds one."""
    base = GraphCategory(max_vertices, "connected")

    def values(b):
        return list(range(max_genus + 1))

    def act(piece, block):
        return sum(block) + graphs.betti(graphs.ghost_graph(piece))[1]

    return SetOp("Genus", base, values, act)


def trivial_op(base: FeynmanModel) -> SetOp:
    """The one-point op; decorating by it changes nothing."""
    return SetOp("trivial", base, lambda b: [()], lambda p, block: ())


BUILTIN = {
    "Assoc": assoc_op,
    "CycAssoc": cyc_assoc_op,
    "Direction": direction_op,
    "Genus": genus_op,
    "Color": color_op,
}


def builtin_decorations(name: str, **kw) -> SetOp:
    if name not in BUILTIN:
        raise KeyError(f"unknown decoration {name!r}; choose from {sorted(BUILTIN)}")
    return BUILTIN[name](**kw)


# ---------------------------------------------------------------------------
# named functors for the command line


def planar_forgetful(max_vertices: int = 3) -> Functor:
    """Planar planted corollas to rooted corollas, forgetting the input orders.

    This is the cover behind ordered-fiber maps over plain maps: a basic
    ordered map ``n -> 1`` is a planar planted corolla with ``n`` inputs.
    """
    return forgetful(DecoratedCategory(assoc_op(max_vertices)))


def ordered_to_plain() -> Functor:
    """Ordered-fiber maps to plain maps, forgetting fiber orders (object-level)."""
    return Functor(
        "NCSet -> FinSet (objects)",
        SetCategory("NCSet"),
        SetCategory("FinSet"),
        lambda n: n,
        lambda f: f.forget(),
    )


def planar_corolla_as_map(X) -> FiberedMap:
    """Read a decorated rooted corolla ``((n+1,), (order,))`` as the ordered map ``n -> 1``."""
    (arity,), (order,) = X
    n = arity - 1
    return FiberedMap(n, 1, (0,) * n, (tuple(i - 1 for i in order),))


NAMED_FUNCTORS: dict[str, Callable[[], Functor]] = {
    "NCSet->FinSet": planar_forgetful,
    "NCSet->FinSet:objects": ordered_to_plain,
    "planar->rooted": planar_forgetful,
    "FS->FinSet": lambda: set_inclusion("FS", "FinSet"),
    "OS->FS": lambda: set_inclusion("OS", "FS"),
}
