"""Finite graphs as (vertices, flags, boundary, involution) and their morphisms.

A graph is a set of vertices, a set of flags (half-edges), a boundary map
sending every flag to the vertex it is attached to, and an involution on
flags.  Orbits of size two are edges, fixed points are tails.

A morphism ``phi: G -> H`` is a triple

* ``flag_inj``: an injection from the flags of ``H`` to the flags of ``G``,
* ``vertex_surj``: a surjection from the vertices of ``G`` to those of ``H``,
* ``ghost_involution``: a fixed-point-free involution on the flags of ``G``
  outside the image of ``flag_inj``.  Its orbits are the ghost edges.

Flags of ``G`` that already form an edge and are not hit by ``flag_inj`` are
contracted edges; the ghost involution is required to agree with the
involution of ``G`` on them, so every contracted edge is a ghost edge.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping


def _frozen(mapping: Mapping[int, int]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(mapping.items()))


class Graph:
    """An immutable finite graph.

    ``boundary`` maps each flag to its vertex and ``involution`` pairs flags
    into edges.  Missing entries of ``involution`` are tails.
    """

    __slots__ = ("vertices", "boundary", "involution", "_key", "_hash")

    def __init__(
        self,
        vertices: Iterable[int],
        boundary: Mapping[int, int],
        involution: Mapping[int, int] | None = None,
    ) -> None:
        vertices = frozenset(vertices)
        boundary = dict(boundary)
        inv = {f: f for f in boundary}
        if involution:
            inv.update(involution)
        if set(inv) != set(boundary):
            raise ValueError("involution must be defined exactly on the flags")
        for f, v in boundary.items():
            if v not in vertices:
                raise ValueError(f"flag {f} attached to unknown vertex {v}")
        for f, g in inv.items():
            if inv.get(g) != f:
                raise ValueError(f"involution is not an involution at flag {f}")
        self.vertices = vertices
        self.boundary = boundary
        self.involution = inv
        self._key = (tuple(sorted(vertices)), _frozen(boundary), _frozen(inv))
        self._hash = hash(self._key)

    @property
    def flags(self) -> frozenset[int]:
        return frozenset(self.boundary)

    def flags_at(self, v: int) -> list[int]:
        return sorted(f for f, w in self.boundary.items() if w == v)

    def edges(self) -> frozenset[frozenset[int]]:
        return frozenset(
            frozenset((f, g)) for f, g in self.involution.items() if f < g
        )

    def tails(self) -> frozenset[int]:
        return frozenset(f for f, g in self.involution.items() if f == g)

    def is_aggregate(self) -> bool:
        return not self.edges()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        edges = sorted(tuple(sorted(e)) for e in self.edges())
        return (
            f"Graph(V={sorted(self.vertices)}, d={dict(sorted(self.boundary.items()))}, "
            f"E={edges})"
        )

    def relabel(self, vmap: Mapping[int, int], fmap: Mapping[int, int]) -> Graph:
        return Graph(
            (vmap[v] for v in self.vertices),
            {fmap[f]: vmap[v] for f, v in self.boundary.items()},
            {fmap[f]: fmap[g] for f, g in self.involution.items()},
        )

    def to_json(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "flags": [
                {"id": f, "vertex": self.boundary[f], "iota": self.involution[f]}
                for f in sorted(self.boundary)
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Graph:
        flags = data["flags"]
        return cls(
            data["vertices"],
            {d["id"]: d["vertex"] for d in flags},
            {d["id"]: d["iota"] for d in flags},
        )


EMPTY = Graph((), {})


def corolla(flags: Iterable[int], vertex: int = 0) -> Graph:
    """The one-vertex graph with the given flags as tails."""
    return Graph((vertex,), {f: vertex for f in flags})


def aggregate(arities: Iterable[int]) -> Graph:
    """Skeletal aggregate of corollas: vertex ``i`` carries ``arities[i]`` flags.

    Flags are numbered consecutively following the vertex order.
    """
    boundary = {}
    nxt = 0
    arities = list(arities)
    for v, a in enumerate(arities):
        for _ in range(a):
            boundary[nxt] = v
            nxt += 1
    return Graph(range(len(arities)), boundary)


def classify_flags(g: Graph) -> tuple[set[frozenset[int]], set[int]]:
    """Split the flags of ``g`` into edges (unordered pairs) and tails."""
    return set(g.edges()), set(g.tails())


def _offsets(g: Graph) -> tuple[int, int]:
    return (max(g.vertices, default=-1) + 1, max(g.flags, default=-1) + 1)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union; the ids of ``g2`` are shifted past those of ``g1``."""
    dv, df = _offsets(g1)
    shifted = g2.relabel({v: v + dv for v in g2.vertices}, {f: f + df for f in g2.flags})
    return Graph(
        g1.vertices | shifted.vertices,
        {**g1.boundary, **shifted.boundary},
        {**g1.involution, **shifted.involution},
    )


def graft(
    outer: Graph,
    inner: Mapping[int, Graph],
    beta: Mapping[int, Mapping[int, int]],
) -> Graph:
    """Insert ``inner[v]`` into each vertex ``v`` of ``outer``.

    ``beta[v]`` is a bijection from the flags at ``v`` to the tails of
    ``inner[v]``.  The inner graphs must use pairwise disjoint ids.  Edges of
    the result are the inner edges together with the images of the outer
    edges under ``beta``.
    """
    if set(inner) != set(outer.vertices) or set(beta) != set(outer.vertices):
        raise ValueError("inner graphs and bijections must be indexed by outer vertices")
    vertices: set[int] = set()
    boundary: dict[int, int] = {}
    involution: dict[int, int] = {}
    full_beta: dict[int, int] = {}
    for v in sorted(outer.vertices):
        gv, bv = inner[v], beta[v]
        if vertices & gv.vertices or set(boundary) & gv.flags:
            raise ValueError("inner graphs must have disjoint ids")
        fv = outer.flags_at(v)
        if sorted(bv) != fv:
            raise ValueError(f"beta at vertex {v} is not defined on the flags at {v}")
        if len(set(bv.values())) != len(bv) or set(bv.values()) != gv.tails():
            raise ValueError(f"beta at vertex {v} is not a bijection onto the tails")
        vertices |= gv.vertices
        boundary.update(gv.boundary)
        involution.update(gv.involution)
        full_beta.update(bv)
    for f in outer.flags:
        involution[full_beta[f]] = full_beta[outer.involution[f]]
    return Graph(vertices, boundary, involution)


class GraphMorphism:
    """A morphism of graphs ``source -> target``.

    Validation runs on construction unless ``check=False``; enumeration code
    that has already filtered candidates uses the unchecked path.
    """

    __slots__ = ("source", "target", "flag_inj", "vertex_surj", "ghost_involution", "_key", "_hash")

    def __init__(
        self,
        source: Graph,
        target: Graph,
        flag_inj: Mapping[int, int],
        vertex_surj: Mapping[int, int],
        ghost_involution: Mapping[int, int] | None = None,
        check: bool = True,
    ) -> None:
        self.source = source
        self.target = target
        self.flag_inj = dict(flag_inj)
        self.vertex_surj = dict(vertex_surj)
        self.ghost_involution = dict(ghost_involution or {})
        self._key = None
        self._hash = None
        if check:
            problem = morphism_violation(self)
            if problem:
                raise ValueError(f"not a graph morphism: {problem}")

    def ghost_edges(self) -> frozenset[frozenset[int]]:
        return frozenset(
            frozenset((f, g)) for f, g in self.ghost_involution.items() if f < g
        )

    def is_iso(self) -> bool:
        return (
            len(self.flag_inj) == len(self.source.flags)
            and len(set(self.vertex_surj.values())) == len(self.source.vertices)
        )

    def key(self) -> tuple:
        if self._key is None:
            self._key = (
                self.source,
                self.target,
                _frozen(self.flag_inj),
                _frozen(self.vertex_surj),
                _frozen(self.ghost_involution),
            )
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GraphMorphism):
            return False
        return (
            self.flag_inj == other.flag_inj
            and self.vertex_surj == other.vertex_surj
            and self.ghost_involution == other.ghost_involution
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self) -> str:
        return (
            f"GraphMorphism(F={dict(sorted(self.flag_inj.items()))}, "
            f"V={dict(sorted(self.vertex_surj.items()))}, "
            f"ghost={sorted(tuple(sorted(e)) for e in self.ghost_edges())})"
        )

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "flag_inj": [[k, v] for k, v in sorted(self.flag_inj.items())],
            "vertex_surj": [[k, v] for k, v in sorted(self.vertex_surj.items())],
            "ghost_edges": sorted(sorted(e) for e in self.ghost_edges()),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> GraphMorphism:
        ghost = {}
        for a, b in data["ghost_edges"]:
            ghost[a], ghost[b] = b, a
        return cls(
            Graph.from_json(data["source"]),
            Graph.from_json(data["target"]),
            dict(map(tuple, data["flag_inj"])),
            dict(map(tuple, data["vertex_surj"])),
            ghost,
        )


def morphism_violation(phi: GraphMorphism) -> str | None:
    """Return a description of the first violated condition, or ``None``."""
    G, H = phi.source, phi.target
    inj, vmap, ghost = phi.flag_inj, phi.vertex_surj, phi.ghost_involution
    if set(inj) != H.flags:
        return "flag map must be defined on every target flag"
    image = set(inj.values())
    if len(image) != len(inj) or not image <= G.flags:
        return "flag map is not an injection into the source flags"
    if set(vmap) != G.vertices or not set(vmap.values()) <= H.vertices:
        return "vertex map is not a map of vertex sets"
    if set(vmap.values()) != H.vertices:
        return "vertex map is not surjective"
    rest = G.flags - image
    if set(ghost) != rest:
        return "ghost involution must live exactly on the flags outside the image"
    for f, g in ghost.items():
        if f == g or ghost.get(g) != f:
            return f"ghost involution is not fixed-point free at flag {f}"
    for f in rest:
        if G.involution[f] != f and ghost[f] != G.involution[f]:
            return f"contracted edge at flag {f} is not a ghost edge"
    # (1) involutions: phi^F o iota_H = iota_G o phi^F
    for fp, f in inj.items():
        if inj[H.involution[fp]] != G.involution[f]:
            return f"edge condition fails at target flag {fp}"
    # (2a) boundary compatibility on the image
    for fp, f in inj.items():
        if vmap[G.boundary[f]] != H.boundary[fp]:
            return f"boundary condition fails at target flag {fp}"
    # (2b) ghost edges live over a single target vertex
    for f, g in ghost.items():
        if vmap[G.boundary[f]] != vmap[G.boundary[g]]:
            return f"ghost edge {{{f},{g}}} spans two target vertices"
    return None


def identity(g: Graph) -> GraphMorphism:
    return GraphMorphism(g, g, {f: f for f in g.flags}, {v: v for v in g.vertices}, {}, check=False)


def compose(phi: GraphMorphism, psi: GraphMorphism) -> GraphMorphism:
    """The composite ``psi o phi`` of ``phi: G -> G'`` and ``psi: G' -> G''``."""
    if phi.target != psi.source:
        raise ValueError("morphisms are not composable")
    inj = {f: phi.flag_inj[psi.flag_inj[f]] for f in psi.target.flags}
    vmap = {v: psi.vertex_surj[phi.vertex_surj[v]] for v in phi.source.vertices}
    ghost = dict(phi.ghost_involution)
    for f, g in psi.ghost_involution.items():
        ghost[phi.flag_inj[f]] = phi.flag_inj[g]
    return GraphMorphism(phi.source, psi.target, inj, vmap, ghost, check=False)


def union_morphisms(phi: GraphMorphism, psi: GraphMorphism) -> GraphMorphism:
    """``phi ⊔ psi`` with the same relabeling convention as :func:`disjoint_union`."""
    sv, sf = _offsets(phi.source)
    tv, tf = _offsets(phi.target)
    inj = dict(phi.flag_inj)
    inj.update({f + tf: g + sf for f, g in psi.flag_inj.items()})
    vmap = dict(phi.vertex_surj)
    vmap.update({v + sv: w + tv for v, w in psi.vertex_surj.items()})
    ghost = dict(phi.ghost_involution)
    ghost.update({f + sf: g + sf for f, g in psi.ghost_involution.items()})
    return GraphMorphism(
        disjoint_union(phi.source, psi.source),
        disjoint_union(phi.target, psi.target),
        inj,
        vmap,
        ghost,
        check=False,
    )


def ghost_graph(phi: GraphMorphism) -> Graph:
    """Source vertices and flags with the ghost edges as the only edges."""
    inv = {f: f for f in phi.source.flags}
    inv.update(phi.ghost_involution)
    return Graph(phi.source.vertices, phi.source.boundary, inv)


def ghost_components(phi: GraphMorphism) -> dict[int, Graph]:
    """The ghost graph split along the fibers of the vertex map."""
    out = {}
    gg = ghost_graph(phi)
    for w in phi.target.vertices:
        vs = {v for v, x in phi.vertex_surj.items() if x == w}
        fl = {f: v for f, v in gg.boundary.items() if v in vs}
        out[w] = Graph(vs, fl, {f: gg.involution[f] for f in fl})
    return out


def transport(phi: GraphMorphism, src_iso: GraphMorphism, tgt_iso: GraphMorphism) -> GraphMorphism:
    """Conjugate ``phi`` along isomorphisms: ``tgt_iso o phi o src_iso^{-1}``."""
    return compose(compose(inverse(src_iso), phi), tgt_iso)


def inverse(iso: GraphMorphism) -> GraphMorphism:
    if not iso.is_iso():
        raise ValueError("not an isomorphism")
    return GraphMorphism(
        iso.target,
        iso.source,
        {f: fp for fp, f in iso.flag_inj.items()},
        {w: v for v, w in iso.vertex_surj.items()},
        {},
        check=False,
    )


def isomorphism_from_maps(g: Graph, vmap: Mapping[int, int], fmap: Mapping[int, int]) -> GraphMorphism:
    """The isomorphism ``g -> g.relabel(vmap, fmap)``."""
    h = g.relabel(vmap, fmap)
    return GraphMorphism(g, h, {fmap[f]: f for f in g.flags}, dict(vmap), {})


def _matchings(items: list[int]) -> Iterator[dict[int, int]]:
    if not items:
        yield {}
        return
    a = items[0]
    for i in range(1, len(items)):
        b = items[i]
        rest = items[1:i] + items[i + 1 :]
        for m in _matchings(rest):
            m = dict(m)
            m[a], m[b] = b, a
            yield m


def all_morphisms(G: Graph, H: Graph) -> list[GraphMorphism]:
    """Every morphism ``G -> H``, by exhaustive search."""
    out: list[GraphMorphism] = []
    gflags, hflags = sorted(G.flags), sorted(H.flags)
    gverts, hverts = sorted(G.vertices), sorted(H.vertices)
    if len(hflags) > len(gflags) or len(hverts) > len(gverts):
        return out
    if len(gflags) - len(hflags) & 1:
        return out
    for image in itertools.permutations(gflags, len(hflags)):
        inj = dict(zip(hflags, image))
        if any(inj[H.involution[fp]] != G.involution[f] for fp, f in inj.items()):
            continue
        rest = [f for f in gflags if f not in set(image)]
        internal = {f: G.involution[f] for f in rest if G.involution[f] != f}
        free = [f for f in rest if G.involution[f] == f]
        forced: dict[int, int] = {}
        for fp, f in inj.items():
            v = G.boundary[f]
            if forced.get(v, H.boundary[fp]) != H.boundary[fp]:
                break
            forced[v] = H.boundary[fp]
        else:
            loose = [v for v in gverts if v not in forced]
            for choice in itertools.product(hverts, repeat=len(loose)):
                vmap = dict(forced)
                vmap.update(zip(loose, choice))
                if len(set(vmap.values())) != len(hverts):
                    continue
                if any(vmap[G.boundary[f]] != vmap[G.boundary[g]] for f, g in internal.items()):
                    continue
                for m in _matchings(free):
                    if any(vmap[G.boundary[f]] != vmap[G.boundary[g]] for f, g in m.items()):
                        continue
                    ghost = dict(internal)
                    ghost.update(m)
                    out.append(GraphMorphism(G, H, inj, vmap, ghost, check=False))
    return out


# ---------------------------------------------------------------------------
# isomorphism classes


def _vertex_invariant(g: Graph, v: int, adj: Mapping) -> tuple:
    tails = sum(1 for f in g.flags_at(v) if g.involution[f] == f)
    loops = adj.get((v, v), 0)
    deg = len(g.flags_at(v))
    return (deg, tails, loops)


def _adjacency(g: Graph) -> dict[tuple[int, int], int]:
    adj: dict[tuple[int, int], int] = defaultdict(int)
    for e in g.edges():
        a, b = sorted(g.boundary[f] for f in e)
        adj[(a, b)] += 1
    return adj


def canonical_form(g: Graph) -> tuple:
    """An isomorphism-invariant key: equal keys iff the graphs are isomorphic.

    Vertices are first split by a local invariant and then every ordering
    compatible with the split is tried; the lexicographically least encoding
    wins.
    """
    adj = _adjacency(g)
    inv = {v: _vertex_invariant(g, v, adj) for v in g.vertices}
    classes: dict[tuple, list[int]] = defaultdict(list)
    for v in sorted(g.vertices):
        classes[inv[v]].append(v)
    ordered_keys = sorted(classes)
    best = None
    for parts in itertools.product(*(itertools.permutations(classes[k]) for k in ordered_keys)):
        order = [v for part in parts for v in part]
        pos = {v: i for i, v in enumerate(order)}
        tails = tuple(inv[v][1] for v in order)
        edges = tuple(
            sorted((min(pos[a], pos[b]), max(pos[a], pos[b]), m) for (a, b), m in adj.items())
        )
        key = (tuple(inv[v] for v in order), tails, edges)
        if best is None or key < best:
            best = key
    if best is None:
        best = ((), (), ())
    return best


def canonical_graph(g: Graph) -> Graph:
    """A skeletal representative of the isomorphism class of ``g``."""
    invs, tails, edges = canonical_form(g)
    boundary: dict[int, int] = {}
    involution: dict[int, int] = {}
    nxt = 0
    for v, t in enumerate(tails):
        for _ in range(t):
            boundary[nxt] = v
            nxt += 1
    for a, b, m in edges:
        for _ in range(m):
            boundary[nxt], boundary[nxt + 1] = a, b
            involution[nxt], involution[nxt + 1] = nxt + 1, nxt
            nxt += 2
    return Graph(range(len(tails)), boundary, involution)


def find_isomorphism(g: Graph, h: Graph) -> GraphMorphism | None:
    """Brute-force search for an isomorphism ``g -> h`` over all flag bijections."""
    if len(g.vertices) != len(h.vertices) or len(g.flags) != len(h.flags):
        return None
    gf, hf = sorted(g.flags), sorted(h.flags)
    gv, hv = sorted(g.vertices), sorted(h.vertices)
    for image in itertools.permutations(hf):
        fmap = dict(zip(gf, image))
        if any(fmap[g.involution[f]] != h.involution[fmap[f]] for f in gf):
            continue
        vmap: dict[int, int] = {}
        ok = True
        for f in gf:
            v, w = g.boundary[f], h.boundary[fmap[f]]
            if vmap.setdefault(v, w) != w:
                ok = False
                break
        if not ok or len(set(vmap.values())) != len(vmap):
            continue
        spare_g = [v for v in gv if v not in vmap]
        spare_h = [w for w in hv if w not in set(vmap.values())]
        vmap.update(zip(spare_g, spare_h))
        return GraphMorphism(g, h, {fmap[f]: f for f in gf}, vmap, {})
    return None


def enumerate_graphs(max_flags: int, max_vertices: int, min_vertices: int = 0) -> list[Graph]:
    """One skeletal representative per isomorphism class."""
    seen: dict[tuple, Graph] = {}
    for nv in range(min_vertices, max_vertices + 1):
        for nf in range(0, max_flags + 1):
            for bd in itertools.product(range(nv), repeat=nf):
                if list(bd) != sorted(bd):
                    continue
                for m in _partial_matchings(list(range(nf))):
                    g = Graph(range(nv), dict(enumerate(bd)), m)
                    key = canonical_form(g)
                    if key not in seen:
                        seen[key] = canonical_graph(g)
    return list(seen.values())


def _partial_matchings(items: list[int]) -> Iterator[dict[int, int]]:
    if not items:
        yield {}
        return
    a, rest = items[0], items[1:]
    yield from _partial_matchings(rest)
    for i, b in enumerate(rest):
        for m in _partial_matchings(rest[:i] + rest[i + 1 :]):
            m = dict(m)
            m[a], m[b] = b, a
            yield m


# ---------------------------------------------------------------------------
# decorations and structural predicates

DECORATION_KINDS = ("direction", "root", "planar", "genus", "edge_order", "color")


@dataclass(frozen=True)
class GraphDecoration:
    """Extra structure on a graph.

    ``direction`` and ``root``: flag -> "in"/"out".  ``planar``: vertex ->
    tuple of its flags in cyclic order.  ``genus``: vertex -> int.
    ``edge_order``: ``{"order": [edge, ...]}`` with edges as flag pairs.
    ``color``: flag -> label.
    """

    kind: str
    payload: Mapping = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in DECORATION_KINDS:
            raise ValueError(f"unknown decoration kind {self.kind!r}")


@dataclass
class GraphReport:
    b0: int
    b1: int
    is_connected: bool
    is_tree: bool
    is_1PI: bool
    genus: int | None
    total_gamma: int
    decoration_valid: bool | None = None
    ribbon_genus: int | None = None


def _components(vertices: Iterable[int], links: Iterable[tuple[int, int]]) -> int:
    parent = {v: v for v in vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in links:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(v) for v in parent})


def betti(g: Graph) -> tuple[int, int]:
    links = [tuple(g.boundary[f] for f in e) for e in g.edges()]
    b0 = _components(g.vertices, links)
    return b0, len(links) - len(g.vertices) + b0


def bridges(g: Graph) -> set[frozenset[int]]:
    """Edges whose removal disconnects their component (DFS low-link)."""
    incident: dict[int, list[tuple[int, frozenset[int]]]] = defaultdict(list)
    for e in g.edges():
        a, b = (g.boundary[f] for f in e)
        incident[a].append((b, e))
        if a != b:
            incident[b].append((a, e))
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    found: set[frozenset[int]] = set()
    counter = itertools.count()

    def visit(v: int, via: frozenset[int] | None) -> None:
        disc[v] = low[v] = next(counter)
        for w, e in incident[v]:
            if e == via:
                continue
            if w not in disc:
                visit(w, e)
                low[v] = min(low[v], low[w])
                if low[w] > disc[v]:
                    found.add(e)
            else:
                low[v] = min(low[v], disc[w])

    for v in sorted(g.vertices):
        if v not in disc:
            visit(v, None)
    return found


def _face_count(g: Graph, cyclic: Mapping[int, tuple[int, ...]]) -> int:
    succ = {}
    for v, order in cyclic.items():
        for i, f in enumerate(order):
            succ[f] = order[(i + 1) % len(order)]
    seen: set[int] = set()
    faces = 0
    for f in g.flags:
        if f in seen:
            continue
        faces += 1
        x = f
        while x not in seen:
            seen.add(x)
            x = succ[g.involution[x]]
    return faces


def ribbon_genus(g: Graph, cyclic: Mapping[int, tuple[int, ...]]) -> int:
    """Genus of the surface a ribbon graph spans, summed over components."""
    b0, _ = betti(g)
    chi = len(g.vertices) - len(g.edges()) + _face_count(g, cyclic)
    # flagless vertices are spheres with one face missing from the orbit count
    chi += sum(1 for v in g.vertices if not g.flags_at(v))
    return (2 * b0 - chi) // 2


def decoration_valid(g: Graph, deco: GraphDecoration) -> bool:
    p = deco.payload
    if deco.kind in ("direction", "root"):
        if set(p) != g.flags or not set(p.values()) <= {"in", "out"}:
            return False
        if any({p[a], p[b]} != {"in", "out"} for a, b in map(tuple, g.edges())):
            return False
        if deco.kind == "root":
            return all(sum(p[f] == "out" for f in g.flags_at(v)) == 1 for v in g.vertices)
        return True
    if deco.kind == "planar":
        return set(p) == g.vertices and all(
            sorted(p[v]) == g.flags_at(v) for v in g.vertices
        )
    if deco.kind == "genus":
        return set(p) == g.vertices and all(isinstance(x, int) and x >= 0 for x in p.values())
    if deco.kind == "edge_order":
        edges = [frozenset(e) for e in p.get("order", ())]
        return len(edges) == len(set(edges)) and set(edges) == set(g.edges())
    if deco.kind == "color":
        return set(p) == g.flags and all(p[a] == p[b] for a, b in map(tuple, g.edges()))
    return False


def structural_predicates(g: Graph, deco: GraphDecoration | None = None) -> GraphReport:
    """Connectivity, Betti numbers, genus and 1-PI status of ``g``."""
    b0, b1 = betti(g)
    gamma = {v: 0 for v in g.vertices}
    valid = None
    rgenus = None
    if deco is not None:
        valid = decoration_valid(g, deco)
        if not valid:
            raise ValueError(f"{deco.kind} decoration does not match the graph")
        if deco.kind == "genus":
            gamma = dict(deco.payload)
        if deco.kind == "planar":
            rgenus = ribbon_genus(g, deco.payload)
    total_gamma = 1 - (b0 - b1) + sum(gamma.values())
    connected = b0 == 1
    return GraphReport(
        b0=b0,
        b1=b1,
        is_connected=connected,
        is_tree=connected and b1 == 0,
        is_1PI=not bridges(g),
        genus=sum(gamma.values()) + b1 if connected else None,
        total_gamma=total_gamma,
        decoration_valid=valid,
        ribbon_genus=rgenus,
    )


def graph_to_json(g: Graph) -> str:
    return json.dumps(g.to_json(), sort_keys=True)


# ---------------------------------------------------------------------------
# exhaustive law checks


@dataclass
class LawReport:
    passed: bool
    counts: dict
    witness: str | None = None

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" witness: {self.witness}" if self.witness else ""
        return f"graph laws: {status} {self.counts}{extra}"


def ghost_by_grafting(phi: GraphMorphism, psi: GraphMorphism) -> Graph:
    """Graft the ghost components of ``phi`` into the vertices of the ghost graph of ``psi``."""
    inner = ghost_components(phi)
    beta = {w: {f: phi.flag_inj[f] for f in psi.source.flags_at(w)} for w in psi.source.vertices}
    return graft(ghost_graph(psi), inner, beta)


def graph_law_report(max_flags: int = 4, max_vertices: int = 3) -> LawReport:
    """Category laws and the ghost-graph identities over every morphism between small graphs.

    Checked: each enumerated morphism is valid; identities are two-sided
    units; composition is associative on composable triples; the ghost
    graph splits over target vertices with the flag map a bijection onto
    the tails of each piece; ghost graphs of disjoint unions are disjoint
    unions; the ghost graph of a composite is the grafted ghost graph.
    """
    gs = enumerate_graphs(max_flags, max_vertices)
    homs = {(a, b): all_morphisms(gs[a], gs[b]) for a in range(len(gs)) for b in range(len(gs))}
    counts = {"graphs": len(gs), "morphisms": 0, "pairs": 0, "triples": 0, "unions": 0}
    report = LawReport(True, counts)

    def fail(msg: str) -> LawReport:
        report.passed = False
        report.witness = msg
        return report

    index: dict[GraphMorphism, int] = {}
    by_source: dict[int, list[int]] = {x: [] for x in range(len(gs))}
    target_of: list[int] = []
    for (a, b), ms in homs.items():
        for phi in ms:
            by_source[a].append(len(target_of))
            index[phi] = len(target_of)
            target_of.append(b)
    morphisms = list(index)
    table: dict[tuple[int, int], int] = {}
    for i, phi in enumerate(morphisms):
        counts["morphisms"] += 1
        problem = morphism_violation(phi)
        if problem:
            return fail(f"{phi!r}: {problem}")
        if compose(identity(phi.source), phi) != phi or compose(phi, identity(phi.target)) != phi:
            return fail(f"identity law fails at {phi!r}")
        pieces = ghost_components(phi)
        if disjoint_pieces(pieces) != ghost_graph(phi):
            return fail(f"ghost graph of {phi!r} is not the union of its pieces")
        for w, piece in pieces.items():
            image = {phi.flag_inj[f] for f in phi.target.flags_at(w)}
            if image != piece.tails():
                return fail(f"flag map of {phi!r} is not onto the tails at {w}")
        for j in by_source[target_of[i]]:
            psi = morphisms[j]
            counts["pairs"] += 1
            comp = compose(phi, psi)
            if comp not in index:
                return fail(f"composite of {phi!r} and {psi!r} is not an enumerated morphism")
            if ghost_graph(comp) != ghost_by_grafting(phi, psi):
                return fail(f"ghost of the composite of {phi!r} and {psi!r} is not the graft")
            table[i, j] = index[comp]
    for (i, j), ij in table.items():
        for k in by_source[target_of[j]]:
            counts["triples"] += 1
            if table[ij, k] != table[i, table[j, k]]:
                return fail(f"associativity fails at {morphisms[i]!r}, {morphisms[j]!r}, {morphisms[k]!r}")
    small = [m for ms in homs.values() for m in ms if len(m.source.flags) <= max_flags // 2]
    for phi in small:
        for psi in small:
            counts["unions"] += 1
            union = union_morphisms(phi, psi)
            if ghost_graph(union) != disjoint_union(ghost_graph(phi), ghost_graph(psi)):
                return fail(f"ghost of {phi!r} ⊔ {psi!r} is not the union")
    return report


def disjoint_pieces(pieces: Mapping[int, Graph]) -> Graph:
    """Union of subgraphs that already use disjoint ids."""
    vertices: set[int] = set()
    boundary: dict[int, int] = {}
    involution: dict[int, int] = {}
    for g in pieces.values():
        vertices |= g.vertices
        boundary.update(g.boundary)
        involution.update(g.involution)
    return Graph(vertices, boundary, involution)
