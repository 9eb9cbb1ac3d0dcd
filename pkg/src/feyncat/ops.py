"""Representations: monoid ops on set categories, Kan extension, Frobenius reciprocity, free operads."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from . import trees
from .finsets import FiberedMap, SetCategory
from .groups import FiniteGroup, MonoidTable, perm_compose, perm_inverse, subgroups
from .trees import LEAF, Node

FLAVORS = ("FS", "FinSet", "FS<", "NCSet")


class FlavorMismatch(ValueError):
    def __init__(self, message: str, witness: Any = None) -> None:
        super().__init__(message)
        self.witness = witness


class FactorizationMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# monoids as ops


@dataclass
class MonoidOp:
    """The op with value ``M^n`` on ``n``, sending the fold map ``2 -> 1`` to the multiplication."""

    monoid: MonoidTable
    flavor: str
    unit: int | None
    category: SetCategory = field(repr=False)

    def on_object(self, n: int) -> list[tuple[int, ...]]:
        return list(itertools.product(self.monoid.carrier, repeat=n))

    def _fold(self, xs: Sequence[int]) -> int:
        if not xs:
            if self.unit is None:
                raise ValueError("empty product needs a unit")
            return self.unit
        out = xs[0]
        for x in xs[1:]:
            out = self.monoid(out, x)
        return out

    def direct(self, phi: FiberedMap, x: Sequence[int]) -> tuple[int, ...]:
        """Table evaluation: multiply each fiber in its order (sorted if unordered)."""
        fibers = phi.orders if phi.ordered else phi.fibers()
        return tuple(self._fold([x[s] for s in fib]) for fib in fibers)

    def _comb(self, xs: Sequence[int], right: bool) -> int:
        if len(xs) == 0:
            return self._fold(())
        if len(xs) == 1:
            return xs[0]
        if right:
            return self.monoid(xs[0], self._comb(xs[1:], True))
        return self.monoid(self._comb(xs[:-1], False), xs[-1])

    def via_generators(self, phi: FiberedMap, x: Sequence[int], right: bool = False) -> tuple[int, ...]:
        """Evaluate through a factorization into a symmetry, folds of ``2 -> 1`` and units.

        ``right`` selects right-nested folds instead of left-nested ones.
        """
        cat = self.category
        sigma, pieces = cat.decompose(phi)
        perm = cat.word_permutation(sigma)
        moved = [0] * len(x)
        for i, v in enumerate(x):
            moved[perm[i]] = v
        out, pos = [], 0
        for p in pieces:
            out.append(self._comb(moved[pos : pos + p.source], right))
            pos += p.source
        return tuple(out)

    def table(self, phi: FiberedMap) -> dict[tuple[int, ...], tuple[int, ...]]:
        return {x: self.direct(phi, x) for x in self.on_object(phi.source)}


def op_from_monoid(M: MonoidTable, flavor: str) -> MonoidOp:
    """The op of a monoid on FS (commutative), FinSet (commutative, unital), FS< or NCSet (unital)."""
    if flavor not in FLAVORS:
        raise ValueError(f"flavor must be one of {FLAVORS}")
    witness = M.associativity_witness()
    if witness is not None:
        raise FlavorMismatch(f"table is not associative at {witness}", witness)
    if flavor in ("FS", "FinSet"):
        witness = M.commutativity_witness()
        if witness is not None:
            raise FlavorMismatch(f"{flavor} needs a commutative monoid; {witness} do not commute", witness)
    unit = M.unit if M.unit is not None else M.find_unit()
    if flavor in ("FinSet", "NCSet") and unit is None:
        raise FlavorMismatch(f"{flavor} needs a unit; the table has none")
    if flavor in ("FS", "FS<"):
        unit = None
    return MonoidOp(M, flavor, unit, SetCategory(flavor))


def eval_op(F: MonoidOp, phi: FiberedMap) -> dict[tuple[int, ...], tuple[int, ...]]:
    """``F(phi)`` as a table, computed from two different factorizations that must agree."""
    out = {}
    for x in F.on_object(phi.source):
        left = F.via_generators(phi, x, right=False)
        right = F.via_generators(phi, x, right=True)
        if left != right:
            raise FactorizationMismatch(f"factorizations of {phi!r} disagree at {x!r}: {left} vs {right}")
        out[x] = left
    return out


def _encode(x: Sequence[int], base: int) -> int:
    code = 0
    for v in x:
        code = code * base + v
    return code


def _table_array(F: MonoidOp, phi: FiberedMap) -> tuple[int, ...]:
    base = len(F.monoid.mult)
    return tuple(_encode(F.direct(phi, x), base) for x in F.on_object(phi.source))


def op_functoriality_witness(F: MonoidOp, bound: int) -> str | None:
    """First composable pair ``X -> Y -> Z`` (sizes up to ``bound``) where ``F`` fails to compose."""
    cat = F.category
    objs = cat.objects(bound)
    arrays = {}

    def arr(f):
        if f not in arrays:
            arrays[f] = _table_array(F, f)
        return arrays[f]

    for X in objs:
        ident = arr(cat.identity(X))
        if ident != tuple(range(len(ident))):
            return f"identity of {X} is not sent to the identity"
        for Y in objs:
            for f in cat.hom(X, Y):
                af = arr(f)
                for Z in objs:
                    for g in cat.hom(Y, Z):
                        ag = arr(g)
                        agf = arr(cat.compose(f, g))
                        if any(ag[i] != j for i, j in zip(af, agf)):
                            return f"{f!r} then {g!r}"
    return None


def naturally_isomorphic(F: MonoidOp, G: MonoidOp, bound: int = 3) -> bool:
    """Search for a bijection of carriers, applied pointwise, that commutes with every ``F(phi)``.

    This compares the ops as functors, not the tables, so it is an
    independent route to monoid isomorphism.
    """
    if len(F.monoid.mult) != len(G.monoid.mult) or F.flavor != G.flavor:
        return False
    cat = F.category
    morphisms = [f for X in cat.objects(bound) for Y in cat.objects(bound) for f in cat.hom(X, Y)]
    for h in itertools.permutations(F.monoid.carrier):
        ok = True
        for f in morphisms:
            for x in F.on_object(f.source):
                lhs = tuple(h[v] for v in F.direct(f, x))
                if lhs != G.direct(f, tuple(h[v] for v in x)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


# ---------------------------------------------------------------------------
# finite categories, functors, Kan extension


@dataclass
class FiniteCategory:
    """A small category given by enumeration; ``compose(f, g)`` is "first f, then g"."""

    objects: list
    hom: Callable[[Any, Any], list]
    compose: Callable[[Any, Any], Any]
    identity: Callable[[Any], Any]


@dataclass
class FiniteFunctor:
    """Functor into finite sets (``on_morphisms`` returns a dict) or between finite categories."""

    on_objects: Callable[[Any], Any]
    on_morphisms: Callable[[Any], Any]


def group_category(G: FiniteGroup, elements: Iterable[int] | None = None) -> FiniteCategory:
    """One-object category of (a subgroup of) ``G``; arrows compose as ``first f, then g`` = ``g f``."""
    elems = sorted(elements) if elements is not None else list(range(G.order))
    return FiniteCategory(["*"], lambda X, Y: elems, lambda f, g: G(g, f), lambda X: 0)


def group_set(G: FiniteGroup, points: int, action: Callable[[int, int], int]) -> FiniteFunctor:
    """A ``G``-set on ``range(points)`` as a functor out of the one-object category."""
    return FiniteFunctor(
        lambda X: list(range(points)),
        lambda g: {x: action(g, x) for x in range(points)},
    )


@dataclass
class KanResult:
    """``Lan_f F (Y)`` as a quotient of ``(comma object, element)`` pairs."""

    classes: list[frozenset]
    cocone: dict

    def __len__(self) -> int:
        return len(self.classes)


class _UnionFind:
    def __init__(self, items: Iterable) -> None:
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def left_kan(C: FiniteCategory, D: FiniteCategory, f: FiniteFunctor, F: FiniteFunctor, Y) -> KanResult:
    """Pointwise left Kan extension: colimit of ``F`` over the comma category of ``f`` over ``Y``.

    Elements are triples ``(X, u, x)`` with ``u: f(X) -> Y`` and ``x in F(X)``;
    a comma morphism ``h: X -> X'`` with ``f(h)`` then ``u'`` equal to ``u``
    identifies ``(X, u, x)`` with ``(X', u', F(h) x)``.
    """
    comma = [(X, u) for X in C.objects for u in D.hom(f.on_objects(X), Y)]
    elements = [(X, u, x) for X, u in comma for x in F.on_objects(X)]
    uf = _UnionFind(elements)
    for X, u in comma:
        for Xp, up in comma:
            for h in C.hom(X, Xp):
                if D.compose(f.on_morphisms(h), up) != u:
                    continue
                action = F.on_morphisms(h)
                for x in F.on_objects(X):
                    uf.union((X, u, x), (Xp, up, action[x]))
    groups: dict = {}
    for e in elements:
        groups.setdefault(uf.find(e), set()).add(e)
    classes = sorted((frozenset(g) for g in groups.values()), key=lambda s: sorted(map(repr, s)))
    cocone = {e: i for i, cls in enumerate(classes) for e in cls}
    return KanResult(classes, cocone)


def kan_structure_map(C, D, f, F, v, Y, Yp) -> dict[int, int]:
    """The map ``Lan(Y) -> Lan(Y')`` induced by ``v: Y -> Y'``; raises if not well defined."""
    src, tgt = left_kan(C, D, f, F, Y), left_kan(C, D, f, F, Yp)
    out: dict[int, int] = {}
    for (X, u, x), i in src.cocone.items():
        j = tgt.cocone[(X, D.compose(u, v), x)]
        if out.setdefault(i, j) != j:
            raise ValueError("induced map is not well defined")
    return out


# ---------------------------------------------------------------------------
# induction, restriction, Frobenius reciprocity


Action = dict  # (group element, point) -> point


def group_actions(G: FiniteGroup, points: int, elements: Sequence[int] | None = None) -> list[Action]:
    """All actions of (a subgroup of) ``G`` on ``range(points)``."""
    elems = list(range(G.order)) if elements is None else sorted(elements)
    gens = _generators(G, elems)
    perms = list(itertools.permutations(range(points)))
    out = []
    for images in itertools.product(perms, repeat=len(gens)):
        table = {0: tuple(range(points))}
        frontier = [0]
        ok = True
        while frontier and ok:
            a = frontier.pop()
            for g, p in zip(gens, images):
                b = G(g, a)
                q = perm_compose(p, table[a])
                if b in table:
                    if table[b] != q:
                        ok = False
                        break
                else:
                    table[b] = q
                    frontier.append(b)
        if ok and all(table[G(a, b)] == perm_compose(table[a], table[b]) for a in elems for b in elems):
            out.append({(g, x): table[g][x] for g in elems for x in range(points)})
    return out


def _generators(G: FiniteGroup, elems: Sequence[int]) -> list[int]:
    target = set(elems)
    gens: list[int] = []
    span = {0}
    for g in elems:
        if g in span:
            continue
        gens.append(g)
        span = _closure(G, gens)
        if span == target:
            break
    return gens


def _closure(G: FiniteGroup, gens: Sequence[int]) -> set[int]:
    out = {0}
    frontier = [0]
    while frontier:
        a = frontier.pop()
        for g in gens:
            b = G(a, g)
            if b not in out:
                out.add(b)
                frontier.append(b)
    return out


@dataclass
class InducedSet:
    """``G x_H X``: classes of pairs ``(g, x)`` under ``(g h, x) ~ (g, h x)``."""

    points: list[frozenset]
    index: dict
    action: Action

    def cls(self, g: int, x: int) -> int:
        return self.index[g, x]


def induce(G: FiniteGroup, H: Sequence[int], X_points: int, X_action: Action) -> InducedSet:
    uf = _UnionFind([(g, x) for g in range(G.order) for x in range(X_points)])
    for g in range(G.order):
        for h in H:
            for x in range(X_points):
                uf.union((G(g, h), x), (g, X_action[h, x]))
    groups: dict = {}
    for e in uf.parent:
        groups.setdefault(uf.find(e), set()).add(e)
    points = sorted((frozenset(s) for s in groups.values()), key=lambda s: min(s))
    index = {e: i for i, s in enumerate(points) for e in s}
    action = {}
    for k in range(G.order):
        for i, s in enumerate(points):
            g, x = min(s)
            action[k, i] = index[G(k, g), x]
    return InducedSet(points, index, action)


def equivariant_maps(elems: Sequence[int], n_src: int, act_src: Action, n_tgt: int, act_tgt: Action) -> list[tuple]:
    """All equivariant maps, chosen orbit by orbit with the stabilizer condition."""
    reps, orbit_of = [], {}
    for x in range(n_src):
        if x in orbit_of:
            continue
        reps.append(x)
        for g in elems:
            orbit_of[act_src[g, x]] = x
    choices = []
    for r in reps:
        stab = [g for g in elems if act_src[g, r] == r]
        choices.append([y for y in range(n_tgt) if all(act_tgt[g, y] == y for g in stab)])
    out = []
    for values in itertools.product(*choices):
        m = [None] * n_src
        for r, y in zip(reps, values):
            for g in elems:
                m[act_src[g, r]] = act_tgt[g, y]
        out.append(tuple(m))
    return out


def _is_equivariant(m: Sequence[int], elems, n_src, act_src, act_tgt) -> bool:
    return all(m[act_src[g, x]] == act_tgt[g, m[x]] for g in elems for x in range(n_src))


@dataclass
class FrobeniusReport:
    passed: bool
    induced_side: int
    restricted_side: int
    witness: str | None = None


def frobenius_check(
    G: FiniteGroup,
    H: Sequence[int],
    X_points: int,
    X_action: Action,
    Y_points: int,
    Y_action: Action,
) -> FrobeniusReport:
    """Verify ``Hom_G(Ind X, Y) = Hom_H(X, Res Y)`` through the unit and counit of the adjunction."""
    H = sorted(H)
    G_elems = list(range(G.order))
    ind = induce(G, H, X_points, X_action)
    n_ind = len(ind.points)
    left = equivariant_maps(G_elems, n_ind, ind.action, Y_points, Y_action)
    right = [
        m
        for m in itertools.product(range(Y_points), repeat=X_points)
        if _is_equivariant(m, H, X_points, X_action, Y_action)
    ]
    report = FrobeniusReport(True, len(left), len(right))

    def fail(msg: str) -> FrobeniusReport:
        report.passed = False
        report.witness = msg
        return report

    unit = [ind.cls(0, x) for x in range(X_points)]
    if not _is_equivariant(unit, H, X_points, X_action, ind.action):
        return fail("unit is not H-equivariant")

    def adjoint_right(alpha):
        return tuple(alpha[unit[x]] for x in range(X_points))

    def adjoint_left(beta):
        out = [None] * n_ind
        for i, s in enumerate(ind.points):
            values = {Y_action[g, beta[x]] for g, x in s}
            if len(values) != 1:
                return None
            out[i] = values.pop()
        return tuple(out)

    right_set = set(right)
    left_set = set(left)
    for alpha in left:
        beta = adjoint_right(alpha)
        if beta not in right_set:
            return fail(f"{alpha} restricts to a non-equivariant map")
        if adjoint_left(beta) != alpha:
            return fail(f"{alpha} does not round-trip")
    for beta in right:
        alpha = adjoint_left(beta)
        if alpha is None or alpha not in left_set:
            return fail(f"{beta} does not extend")
        if adjoint_right(alpha) != beta:
            return fail(f"{beta} does not round-trip")
    # triangle identities
    res_y = induce(G, H, Y_points, {(h, y): Y_action[h, y] for h in H for y in range(Y_points)})
    counit = [None] * len(res_y.points)
    for i, s in enumerate(res_y.points):
        values = {Y_action[g, y] for g, y in s}
        if len(values) != 1:
            return fail("counit is not well defined")
        counit[i] = values.pop()
    for y in range(Y_points):
        if counit[res_y.cls(0, y)] != y:
            return fail("Res(counit) after unit is not the identity")
    ind_ind = induce(G, H, n_ind, {(h, i): ind.action[h, i] for h in H for i in range(n_ind)})
    for g in G_elems:
        for x in range(X_points):
            i = ind.cls(g, x)
            # Ind(unit) sends [g, x] to [g, [1, x]]; the counit sends that to g [1, x].
            image = ind_ind.cls(g, unit[x])
            values = {ind.action[k, j] for k, j in ind_ind.points[image]}
            if values != {i}:
                return fail("counit after Ind(unit) is not the identity")
    if report.induced_side != report.restricted_side:
        return fail("hom-set sizes differ")
    return report


def frobenius_sweep(groups: dict[str, FiniteGroup], max_points: int = 3) -> tuple[int, str | None]:
    """Run :func:`frobenius_check` on every subgroup, H-set and G-set up to ``max_points``."""
    cases = 0
    for name, G in groups.items():
        y_actions = {k: group_actions(G, k) for k in range(1, max_points + 1)}
        for H in subgroups(G):
            for kx in range(1, max_points + 1):
                for xa in group_actions(G, kx, sorted(H)):
                    for ky in range(1, max_points + 1):
                        for ya in y_actions[ky]:
                            cases += 1
                            r = frobenius_check(G, sorted(H), kx, xa, ky, ya)
                            if not r.passed:
                                return cases, f"{name} H={sorted(H)}: {r.witness}"
    return cases, None


# ---------------------------------------------------------------------------
# operads


@dataclass
class OperadData:
    """A set-valued operad given by enumerable spaces and a composition ``gamma``.

    ``gamma(a, bs)`` inserts ``bs[j]`` into input ``j + 1`` of ``a``.
    ``act(a, perm)`` is the right symmetric-group action (``None`` if
    nonsymmetric); ``perm`` lists, for each new input, the old input it was.
    """

    name: str
    space: Callable[[int], list]
    arity: Callable[[Any], int]
    gamma: Callable[[Any, Sequence], Any]
    unit: Any = None
    act: Callable[[Any, tuple], Any] | None = None

    def circ(self, a, i: int, b) -> Any:
        return circ_i(self, a, b, i)


def circ_i(O: OperadData, a, b, i: int) -> Any:
    """``a o_i b``: ``gamma`` with the unit in every slot but ``i`` (1-based)."""
    if O.unit is None:
        raise ValueError(f"{O.name} has no unit; partial compositions are undefined")
    n = O.arity(a)
    if not 1 <= i <= n:
        raise IndexError(f"slot {i} out of range 1..{n}")
    return O.gamma(a, [b if j == i else O.unit for j in range(1, n + 1)])


def gamma_from_circ(O: OperadData, a, bs: Sequence) -> Any:
    """``(...(a o_n b_n)...) o_1 b_1``."""
    out = a
    for i in range(len(bs), 0, -1):
        out = circ_i(O, out, bs[i - 1], i)
    return out


def operad_axiom_witness(O: OperadData, max_arity: int) -> str | None:
    """Check associativity, units and (if symmetric) equivariance on all elements up to ``max_arity``.

    Associativity is tested in partial form: sequential ``(a o_i b) o_{i+j-1} c = a o_i (b o_j c)``
    and parallel ``(a o_i b) o_{k+m-1} c = (a o_k c) o_i b`` for ``i < k``.
    """
    spaces = {n: O.space(n) for n in range(0, max_arity + 1)}
    elems = [(n, a) for n, s in spaces.items() for a in s]
    if O.unit is not None:
        for n, a in elems:
            if n >= 1 and O.gamma(O.unit, [a]) != a:
                return f"left unit fails at {a!r}"
            if O.gamma(a, [O.unit] * n) != a:
                return f"right unit fails at {a!r}"
    for na, a in elems:
        for nb, b in elems:
            if na == 0 or na + nb - 1 > max_arity:
                continue
            for nc, c in elems:
                if na + nb + nc - 2 > max_arity:
                    continue
                for i in range(1, na + 1):
                    ab = circ_i(O, a, b, i)
                    for j in range(1, nb + 1):
                        if circ_i(O, ab, c, i + j - 1) != circ_i(O, a, circ_i(O, b, c, j), i):
                            return f"sequential associativity fails at {a!r}, {b!r}, {c!r}, {i}, {j}"
                    for k in range(i + 1, na + 1):
                        if circ_i(O, ab, c, k + nb - 1) != circ_i(O, circ_i(O, a, c, k), b, i):
                            return f"parallel associativity fails at {a!r}, {b!r}, {c!r}, {i}, {k}"
    if O.act is not None:
        for na, a in elems:
            for sigma in itertools.permutations(range(na)):
                for nb, b in elems:
                    if na + nb - 1 > max_arity:
                        continue
                    for i in range(1, na + 1):
                        lhs = circ_i(O, O.act(a, sigma), b, i)
                        rhs = O.act(circ_i(O, a, b, sigma[i - 1] + 1), _block_perm(sigma, i, nb))
                        if lhs != rhs:
                            return f"equivariance fails at {a!r}, {sigma}, {b!r}, {i}"
    return None


def _block_perm(sigma: tuple, i: int, nb: int) -> tuple:
    """The permutation of ``n + nb - 1`` inputs induced by ``sigma`` with slot ``i`` blown up."""
    starts = {}
    pos = 0
    for old in range(len(sigma)):
        starts[old] = pos
        pos += nb if old == sigma[i - 1] else 1
    out = []
    for new, old in enumerate(sigma):
        if new == i - 1:
            out.extend(starts[old] + t for t in range(nb))
        else:
            out.append(starts[old])
    return tuple(out)


# free operads on arity-indexed generators

@dataclass(frozen=True)
class SymTree:
    """A leaf-labelled tree; children are kept sorted since generators carry trivial actions."""

    label: Any
    children: tuple


def _sym_leaves(t) -> list[int]:
    if isinstance(t, int):
        return [t]
    return [x for c in t.children for x in _sym_leaves(c)]


def _sym_canon(t):
    if isinstance(t, int):
        return t
    kids = tuple(sorted((_sym_canon(c) for c in t.children), key=lambda c: min(_sym_leaves(c))))
    return SymTree(t.label, kids)


def _sym_relabel(t, f):
    if isinstance(t, int):
        return f(t)
    return SymTree(t.label, tuple(_sym_relabel(c, f) for c in t.children))


def _set_partitions_ordered(items: list[int], k: int):
    """Ways to distribute ``items`` into ``k`` nonempty blocks, blocks sorted by minimum."""
    if k == 0:
        if not items:
            yield []
        return
    if len(items) < k:
        return
    first, rest = items[0], items[1:]
    for size in range(0, len(rest) + 1):
        for chosen in itertools.combinations(rest, size):
            remaining = [x for x in rest if x not in chosen]
            for tail in _set_partitions_ordered(remaining, k - 1):
                yield [[first, *chosen]] + tail


def free_op(flavor: str, generators: dict[int, int], bound: int) -> OperadData:
    """The free operad on ``generators[n]`` points of arity ``n``, enumerated up to arity ``bound``.

    ``nonsymmetric``: planar trees with labelled vertices.  ``symmetric``:
    trees with labelled leaves; generators carry the trivial action.
    """
    gens = {n: c for n, c in generators.items() if c > 0}
    if any(n < 1 for n in gens):
        raise ValueError("generators need arity at least 1")
    if flavor in ("nonsymmetric", "ns"):
        return _free_ns(gens, bound)
    if flavor in ("symmetric", "sym"):
        return _free_sym(gens, bound)
    raise ValueError(f"unknown flavor {flavor!r}")


def _check_arity(n: int, bound: int) -> None:
    if n > bound:
        raise ValueError(f"arity {n} exceeds the bound {bound}")


def _free_ns(gens: dict[int, int], bound: int) -> OperadData:
    if 1 in gens:
        raise ValueError("unary generators give infinitely many trees per arity")
    cache: dict[int, list] = {}

    def space(n: int) -> list:
        _check_arity(n, bound)
        if n not in cache:
            out = []
            for shape in trees.planar_trees(n, 2) if n >= 1 else ():
                if shape == LEAF:
                    out.append(LEAF)
                    continue
                verts = trees.vertices_preorder(shape)
                if any(v.arity not in gens for v in verts):
                    continue
                for labels in itertools.product(*(range(gens[v.arity]) for v in verts)):
                    out.append(_label_preorder(shape, labels))
            cache[n] = out
        return cache[n]

    def gamma(a, bs):
        return trees.substitute(a, list(bs))

    return OperadData("free-ns", space, trees.leaf_count, gamma, LEAF, None)


def _label_preorder(shape, labels: Sequence[int]):
    it = iter(labels)

    def go(s):
        if s == LEAF:
            return LEAF
        lab = (s.arity, next(it))
        return Node(lab, tuple(go(c) for c in s.children))

    return go(shape)


def _free_sym(gens: dict[int, int], bound: int) -> OperadData:
    if 1 in gens:
        raise ValueError("unary generators give infinitely many trees per arity")
    cache: dict[int, list] = {}

    def build(leaves: tuple[int, ...]) -> list:
        if len(leaves) == 1:
            return [leaves[0]]
        out = []
        for k, count in gens.items():
            for blocks in _set_partitions_ordered(list(leaves), k):
                for subs in itertools.product(*(build(tuple(b)) for b in blocks)):
                    for g in range(count):
                        out.append(SymTree((k, g), tuple(subs)))
        return out

    def space(n: int) -> list:
        _check_arity(n, bound)
        if n not in cache:
            cache[n] = sorted(set(map(_sym_canon, build(tuple(range(n))))), key=repr) if n else []
        return cache[n]

    def arity(t) -> int:
        return len(_sym_leaves(t))

    def gamma(a, bs):
        offsets = []
        pos = 0
        for b in bs:
            offsets.append(pos)
            pos += arity(b)
        return _sym_canon(
            _sym_relabel_tree(a, lambda leaf: _sym_relabel(bs[leaf], lambda x: x + offsets[leaf]))
        )

    def act(a, perm):
        # new input k was old input perm[k]
        inv = perm_inverse(tuple(perm))
        return _sym_canon(_sym_relabel(a, lambda x: inv[x]))

    return OperadData("free-sym", space, arity, gamma, 0, act)


def _sym_relabel_tree(t, f):
    if isinstance(t, int):
        return f(t)
    return SymTree(t.label, tuple(_sym_relabel_tree(c, f) for c in t.children))


def flatten(nested) -> Any:
    """Monad multiplication: a planar tree whose vertices are labelled by trees becomes one tree.

    A vertex labelled by the tree ``t`` has ``leaf_count(t)`` children,
    which are substituted into the leaves of ``t``.
    """
    if nested == LEAF:
        return LEAF
    return trees.substitute(nested.label, [flatten(c) for c in nested.children])


def map_labels(nested, f: Callable[[Any], Any]) -> Any:
    """Apply ``f`` to every vertex label (the functor part of the monad)."""
    return trees.relabel(nested, f)


# finite example operads


def com_operad() -> OperadData:
    """Commutative operad: one point per arity, the point is its arity."""
    return OperadData(
        "com",
        lambda n: [n],
        lambda a: a,
        lambda a, bs: sum(bs),
        1,
        lambda a, perm: a,
    )


def assoc_operad() -> OperadData:
    """Associative operad: arity ``n`` elements are orderings of ``0..n-1``."""

    def gamma(a, bs):
        offsets = []
        pos = 0
        for b in bs:
            offsets.append(pos)
            pos += len(b)
        return tuple(x + offsets[i] for i in a for x in bs[i])

    def act(a, perm):
        inv = perm_inverse(tuple(perm))
        return tuple(inv[x] for x in a)

    return OperadData(
        "assoc",
        lambda n: [tuple(p) for p in itertools.permutations(range(n))],
        len,
        gamma,
        (0,),
        act,
    )
