"""Command-line entry point: ``feyncat <subcommand> ...``.

Exit status is 0 on success, 1 when a check fails (the first counterexample
is printed), and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from collections import Counter
from typing import Any, Callable, Sequence

from . import finsets, graphs, hopf, plus, transforms, wconstruct
from .aggregates import GraphCategory
from .decoration import NAMED_FUNCTORS, check_cover
from .feynman import check_feynman_axioms
from .groups import FiniteGroup, all_monoids, small_groups, subgroups
from .linear import FreeModuleElement
from .ops import (
    FLAVORS,
    FiniteFunctor,
    FlavorMismatch,
    frobenius_check,
    free_op,
    group_actions,
    group_category,
    group_set,
    induce,
    left_kan,
    op_from_monoid,
    op_functoriality_witness,
)
from .trees import to_parens

log = logging.getLogger("feyncat")

FORMATS = ("text", "json", "off")
GRAPH_NAMES = ("G", "𝔊", "Agg")
AXIOM_CATEGORIES = GRAPH_NAMES + ("FinSet", "FS", "FI", "NCSet", "FS<", "Δ₊", "OS", "OI", "Δ₊S")
MONOID_SIZES = {"FS": 4, "FS<": 3, "FinSet": 3, "NCSet": 3}
ALIASES = {"Delta+": "Δ₊", "Delta+S": "Δ₊S", "FSord": "FS<"}


class UsageError(Exception):
    """Bad arguments discovered after parsing."""


class CheckFailed(Exception):
    """A verification ran and found a counterexample."""


# ---------------------------------------------------------------------------
# argument helpers


def positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def natural(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def category_name(text: str) -> str:
    return ALIASES.get(text, text)


def _globals(suppress: bool) -> argparse.ArgumentParser:
    """Global flags; subparsers suppress defaults so a flag given before the subcommand survives."""
    p = argparse.ArgumentParser(add_help=False)

    def default(value):
        return argparse.SUPPRESS if suppress else value

    p.add_argument("--bound", type=positive, default=default(None), help="size bound for enumerations")
    p.add_argument("--seed", type=int, default=default(0), help="seed for randomized checks")
    p.add_argument("--format", choices=FORMATS, default=default("text"), help="output format")
    return p


def _formats(args, allowed: Sequence[str]) -> str:
    if args.format not in allowed:
        raise UsageError(f"--format {args.format} is not available here; choose from {', '.join(allowed)}")
    return args.format


def _bound(args, default: int) -> int:
    return default if args.bound is None else args.bound


def _emit(args, payload: Any, text: str | Callable[[], str]) -> None:
    fmt = _formats(args, ("text", "json"))
    if fmt == "json":
        print(json.dumps(payload, indent=2, ensure_ascii=False, sort_keys=True))
    else:
        print(text() if callable(text) else text)


def _verdict(args, passed: bool, payload: dict, text: str) -> None:
    payload = {"passed": passed, **payload}
    _emit(args, payload, text)
    if not passed:
        raise CheckFailed


def _read_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# graphs


def cmd_graphs_laws(args) -> None:
    report = graphs.graph_law_report(_bound(args, 4), args.vertices)
    _verdict(args, report.passed, {"counts": report.counts, "witness": report.witness}, str(report))


def cmd_graphs_enumerate(args) -> None:
    gs = graphs.enumerate_graphs(_bound(args, 3), args.vertices)
    if args.count:
        _emit(args, {"count": len(gs)}, str(len(gs)))
    else:
        _emit(args, [g.to_json() for g in gs], lambda: "\n".join(graphs.graph_to_json(g) for g in gs))


def _load_morphism(path: str) -> graphs.GraphMorphism:
    try:
        return graphs.GraphMorphism.from_json(_read_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from exc


def cmd_graphs_compose(args) -> None:
    phi, psi = _load_morphism(args.first), _load_morphism(args.second)
    if phi.target != psi.source:
        raise UsageError("the target of the first morphism must equal the source of the second")
    comp = graphs.compose(phi, psi)
    _emit(args, comp.to_json(), lambda: json.dumps(comp.to_json(), sort_keys=True))


def cmd_graphs_ghost(args) -> None:
    ghost = graphs.ghost_graph(_load_morphism(args.morphism))
    _emit(args, ghost.to_json(), lambda: graphs.graph_to_json(ghost))


def cmd_graphs_check(args) -> None:
    data = _read_json(args.file)
    try:
        if isinstance(data, dict) and "flag_inj" in data:
            ghost = {}
            for a, b in data["ghost_edges"]:
                ghost[a], ghost[b] = b, a
            phi = graphs.GraphMorphism(
                graphs.Graph.from_json(data["source"]),
                graphs.Graph.from_json(data["target"]),
                dict(map(tuple, data["flag_inj"])),
                dict(map(tuple, data["vertex_surj"])),
                ghost,
                check=False,
            )
            problem = graphs.morphism_violation(phi)
            kind = "morphism"
        else:
            graphs.Graph.from_json(data)
            problem, kind = None, "graph"
    except ValueError as exc:
        problem, kind = str(exc), "graph"
    except (KeyError, TypeError) as exc:
        raise UsageError(f"{args.file}: malformed document ({exc})") from exc
    text = f"valid {kind}" if problem is None else f"invalid {kind}: {problem}"
    _verdict(args, problem is None, {"kind": kind, "witness": problem}, text)


# ---------------------------------------------------------------------------
# axioms, finite sets, decorations


def _axiom_category(name: str, vertices: int):
    if name in GRAPH_NAMES:
        return GraphCategory(vertices)
    return finsets.SetCategory(name)


def cmd_axioms(args) -> None:
    report = check_feynman_axioms(_axiom_category(args.category, args.vertices), _bound(args, 4))
    payload = {"category": args.category, "bound": report.bound, "counts": report.counts, "witness": report.witness}
    _verdict(args, report.passed, payload, str(report))


def cmd_finset_hom(args) -> None:
    if args.cat in ("FI_G", "FI_d"):
        raise UsageError("labeled injections are not listed here; use FI")
    maps = finsets.enumerate_hom(args.cat, args.source, args.target)
    if args.count:
        _emit(args, {"count": len(maps)}, str(len(maps)))
    else:
        _emit(args, [m.to_json() for m in maps], lambda: "\n".join(json.dumps(m.to_json()) for m in maps))


def cmd_decorate_cover(args) -> None:
    report = check_cover(NAMED_FUNCTORS[args.functor](), _bound(args, 3))
    payload = {"functor": args.functor, "counts": report.counts, "witness": report.witness}
    _verdict(args, report.is_cover, payload, str(report))


# ---------------------------------------------------------------------------
# ops


def _parse_generators(text: str) -> dict[int, int]:
    gens: dict[int, int] = {}
    for part in text.split(","):
        try:
            arity, count = (int(x) for x in part.split(":"))
        except ValueError as exc:
            raise UsageError(f"generators look like '2:1,3:2', got {text!r}") from exc
        gens[arity] = gens.get(arity, 0) + count
    return gens


def cmd_ops_free(args) -> None:
    try:
        O = free_op(args.flavor, _parse_generators(args.gen), args.upto)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    counts = {n: len(O.space(n)) for n in range(1, args.upto + 1)}
    if args.count:
        _emit(args, {str(n): c for n, c in counts.items()}, " ".join(str(c) for c in counts.values()))
    else:
        _emit(
            args,
            {str(n): [repr(x) for x in O.space(n)] for n in counts},
            lambda: "\n".join(f"{n}: {x!r}" for n in counts for x in O.space(n)),
        )


def cmd_ops_monoids(args) -> None:
    order = _bound(args, 3)
    checked, witness = 0, None
    for k in range(1, order + 1):
        for M in all_monoids(k):
            for flavor in args.flavor:
                try:
                    F = op_from_monoid(M, flavor)
                except FlavorMismatch:
                    continue
                checked += 1
                witness = op_functoriality_witness(F, args.size or MONOID_SIZES[flavor])
                if witness:
                    witness = f"{flavor} {M.mult}: {witness}"
                    break
            if witness:
                break
        if witness:
            break
    text = f"monoid ops: {'PASS' if witness is None else 'FAIL'} ({checked} functors)"
    if witness:
        text += f" witness: {witness}"
    _verdict(args, witness is None, {"functors": checked, "witness": witness}, text)


def _element_orders(G: FiniteGroup, elems: Sequence[int]) -> Counter:
    def order(g: int) -> int:
        k, x = 1, g
        while x != 0:
            x, k = G(x, g), k + 1
        return k

    return Counter(order(g) for g in elems)


def _group(name: str) -> FiniteGroup:
    groups = small_groups(6)
    if name not in groups:
        raise UsageError(f"unknown group {name!r}; known: {', '.join(groups)}")
    return groups[name]


def _subgroup(G: FiniteGroup, name: str) -> list[int]:
    """A subgroup of ``G`` isomorphic to the named group (element orders decide this up to order 6)."""
    want = _element_orders(_group(name), range(_group(name).order))
    for H in subgroups(G):
        if _element_orders(G, sorted(H)) == want:
            return sorted(H)
    raise UsageError(f"{name} is not a subgroup of the given group")


def cmd_ops_kan(args) -> None:
    G = _group(args.g)
    H = _subgroup(G, args.h)
    position = {h: i for i, h in enumerate(H)}
    regular = group_set(G, len(H), lambda h, i: position[G(h, H[i])])
    inclusion = FiniteFunctor(lambda X: "*", lambda h: h)
    result = left_kan(group_category(G, H), group_category(G), inclusion, regular, "*")
    action = {(h, i): position[G(h, H[i])] for h in H for i in range(len(H))}
    induced = len(induce(G, H, len(H), action).points)
    text = f"Lan {args.h} -> {args.g} of the regular set: {len(result)} elements (induced set: {induced})"
    _verdict(args, len(result) == induced, {"kan": len(result), "induced": induced}, text)


def cmd_ops_frobenius(args) -> None:
    G = _group(args.g)
    H = _subgroup(G, args.h)
    points = _bound(args, 3)
    cases, witness = 0, None
    y_actions = {k: group_actions(G, k) for k in range(1, points + 1)}
    for kx in range(1, points + 1):
        for xa in group_actions(G, kx, H):
            for ky, actions in y_actions.items():
                for ya in actions:
                    cases += 1
                    r = frobenius_check(G, H, kx, xa, ky, ya)
                    if not r.passed and witness is None:
                        witness = r.witness
    text = f"Frobenius reciprocity {args.h} <= {args.g}: {'PASS' if witness is None else 'FAIL'} ({cases} cases)"
    _verdict(args, witness is None, {"cases": cases, "subgroup": H, "witness": witness}, text)


# ---------------------------------------------------------------------------
# plus construction


def _node_text(node) -> str:
    if isinstance(node, int):
        return str(node + 1)
    head = "u" if node.vertex is None else f"v{node.vertex}"
    return f"{head}({','.join(_node_text(c) for c in node.children)})"


def _forest_text(f) -> str:
    return " ".join(_node_text(t) for t in f.trees)


def cmd_plus_hom(args) -> None:
    forests = plus.hom(args.base, args.level, args.source, args.target)
    if args.count:
        _emit(args, {"count": len(forests)}, str(len(forests)))
    else:
        _emit(args, [_forest_text(f) for f in forests], lambda: "\n".join(_forest_text(f) for f in forests))


def cmd_plus_equiv(args) -> None:
    report = plus.equiv_check(args.level, args.base, _bound(args, 3))
    _verdict(args, report.passed, {"counts": report.counts, "witness": report.witness}, str(report))


# ---------------------------------------------------------------------------
# Hopf algebras


def _parse_morphism(cat: str, text: str):
    """``"3->1"`` (when the class is unique) or fiber sizes ``"2+1"``."""
    try:
        if "->" in text:
            n, m = (int(x) for x in text.split("->"))
            if cat in hopf.CLASSES:
                options = sorted({hopf.class_key(p) for p in finsets.enumerate_hom("FS", n, m)})
            else:
                options = finsets.enumerate_hom(cat, n, m)
            if len(options) != 1:
                raise UsageError(f"{text} names {len(options)} morphisms in {cat}; give fiber sizes like 2+1")
            return options[0]
        sizes = tuple(int(x) for x in text.split("+")) if text != "0" else ()
    except ValueError as exc:
        raise UsageError(f"cannot parse morphism {text!r}") from exc
    if cat in hopf.CLASSES:
        return tuple(sorted(sizes))
    phi = hopf.os_morphism(sizes)
    if cat not in hopf.LITERAL:
        return finsets.FiberedMap(phi.source, phi.target, phi.f, None)
    return phi


def _pair_json(cat: str, x: FreeModuleElement) -> list:
    return x.to_json(lambda p: hopf.encode_pair(cat, p))


def cmd_hopf_coproduct(args) -> None:
    key = _parse_morphism(args.cat, args.morphism)
    try:
        delta = hopf.coproduct_key(args.cat, key)
    except hopf.NotDecompositionFinite as exc:
        _verdict(args, False, {"witness": str(exc)}, f"not decomposition finite: {exc}")
        return
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rows = _pair_json(args.cat, delta)
    _emit(args, {"category": args.cat, "morphism": args.morphism, "coproduct": rows},
          lambda: "\n".join(f"{r['coefficient']} {r['key']}" for r in rows))


def cmd_hopf_check(args) -> None:
    bound = _bound(args, 4)
    reports = [
        hopf.check_coassociativity(args.cat, bound),
        hopf.check_counit(args.cat, bound),
        hopf.check_bialgebra(args.cat, bound),
    ]
    passed = all(r.passed for r in reports)
    lines = [str(r) for r in reports]
    payload = {"reports": [{"name": r.name, "passed": r.passed, "checked": r.checked, "witness": repr(r.witness) if r.witness else None} for r in reports]}
    _verdict(args, passed, payload, "\n".join(lines))


def cmd_hopf_antipode(args) -> None:
    if args.cat not in ("OS", "FS"):
        raise UsageError("the antipode is available for OS and FS")
    Q = hopf.HopfQuotient(args.cat)
    degree = _bound(args, 3)
    table = Q.antipode_table(degree)
    check = Q.check_antipode(degree)

    def enc(q):
        return "+".join(map(str, q)) if q else "1"

    payload = {"antipode": {enc(q): s.to_json(enc) for q, s in table.items()}, "witness": repr(check.witness) if check.witness else None}
    text = "\n".join(
        f"S({enc(q)}) = " + (" + ".join(f"{r['coefficient']}*[{r['key']}]" for r in s.to_json(enc)) or "0")
        for q, s in table.items()
    ) + f"\n{check}"
    _verdict(args, check.passed, payload, text)


# ---------------------------------------------------------------------------
# transforms


def _tree_json(x: FreeModuleElement) -> list:
    return x.to_json(lambda t: to_parens(t))


def cmd_transform_ft(args) -> None:
    O = transforms.operad_by_name(args.operad)
    ft = transforms.feynman_transform(O, args.upto)
    out: dict = {"operad": f"FT({O.name})", "arities": {}}
    lines = []
    for n, space in ft.spaces.items():
        dims = {str(k): len(v) for k, v in sorted(space.bases.items())}
        entry: dict = {"dimensions": dims}
        lines.append(f"arity {n}: " + " ".join(f"{k} edges: {v}" for k, v in dims.items()))
        if args.emit_differential:
            entry["differential"] = [
                {"tree": to_parens(k), "d": _tree_json(space.d(FreeModuleElement.basis(k)))} for deg in sorted(space.bases) for k in space.bases[deg]
            ]
            for row in entry["differential"]:
                terms = " + ".join(f"{r['coefficient']}*{r['key']}" for r in row["d"]) or "0"
                lines.append(f"  d {row['tree']} = {terms}")
        out["arities"][str(n)] = entry
    witness = ft.d_squared_witness()
    out["d_squared_zero"] = witness is None
    lines.append("d^2 = 0" if witness is None else f"d^2 != 0 at {witness}")
    _verdict(args, witness is None, out, "\n".join(lines))


def cmd_transform_dsquared(args) -> None:
    edges = _bound(args, 4)
    checked, witness = 0, None
    for key in transforms.tree_classes(edges):
        checked += 1
        x = transforms.d_phi1(transforms.d_phi1(FreeModuleElement.basis(key), args.scheme), args.scheme)
        if not x.is_zero():
            witness = to_parens(key)
            break
    text = f"d_phi1^2 = 0 on {checked} tree classes" if witness is None else f"d_phi1^2 != 0 at {witness}"
    _verdict(args, witness is None, {"checked": checked, "witness": witness}, text)


def cmd_transform_homology(args) -> None:
    O = transforms.operad_by_name(args.operad)
    build = {"ft": transforms.feynman_transform, "bar": transforms.bar_construction, "cobar-bar": transforms.cobar_bar}[args.construction]
    complex_ = build(O, args.upto)
    table = {str(n): {str(k): v for k, v in sorted(space.homology_ranks().items())} for n, space in complex_.spaces.items()}
    _emit(args, {"construction": complex_.name, "homology": table},
          lambda: "\n".join(f"arity {n}: {h}" for n, h in table.items()))


def cmd_transform_master(args) -> None:
    rng = random.Random(args.seed)
    log.info("seed %d", args.seed)
    examples: list[tuple[str, Any, dict]] = [("line(1)", *transforms.line_algebra(1)), ("unital dg", *transforms.unital_dg_algebra())]
    square = transforms.DgSpace((0, 0))
    dg = transforms.DgSpace((0, 1), {1: {0: 1}})
    for i in range(args.trials):
        examples.append((f"random degree-0 #{i}", square, transforms.random_structure_maps(square, [2], rng)))
        examples.append((f"random dg #{i}", dg, transforms.random_structure_maps(dg, [2, 3], rng)))
    holds, witness = 0, None
    for name, A, maps in examples:
        report = transforms.master_equation_check(A, maps, args.arity)
        holds += report.holds
        if not report.agree:
            witness = f"{name}: {report}"
            break
    text = f"master equation vs dg-map condition: {'agree' if witness is None else 'DISAGREE'} on {len(examples)} algebras ({holds} solutions)"
    if witness:
        text += f"; {witness}"
    _verdict(args, witness is None, {"algebras": len(examples), "solutions": holds, "seed": args.seed, "witness": witness}, text)


# ---------------------------------------------------------------------------
# W-construction


def cmd_w_associahedron(args) -> None:
    if not 3 <= args.n <= wconstruct.MAX_N:
        raise UsageError(f"--n must lie in 3..{wconstruct.MAX_N}")
    K = wconstruct.associahedron(args.n)
    fmt = _formats(args, FORMATS)
    if fmt == "off":
        if args.n not in (3, 4):
            raise UsageError("OFF export is available for n = 3 and n = 4")
        sys.stdout.write(wconstruct.to_off(K, args.n))
    elif fmt == "json":
        print(wconstruct.dumps(K))
    else:
        print(f"{K.name}: cells by dimension {K.counts()}, Euler characteristic {K.euler_characteristic()}")


def cmd_w_glue(args) -> None:
    Kn, Km = wconstruct.associahedron(args.n), wconstruct.associahedron(args.m)
    g = wconstruct.glue_circ_i(Kn, Km, args.i)
    witness = wconstruct.gluing_functoriality_witness(Kn, Km, args.i)
    counts = g.image.counts()
    text = f"image of K{args.n} x K{args.m} under circ_{args.i}: cells by dimension {counts}, frozen edge {g.edge}"
    payload = {"counts": list(counts), "edge": list(g.edge), "witness": repr(witness) if witness else None}
    _verdict(args, witness is None, payload, text)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = _globals(suppress=True)
    parser = argparse.ArgumentParser(prog="feyncat", description="Finite models of Feynman categories.", parents=[_globals(False)])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to standard error")
    sub = parser.add_subparsers(dest="command", required=True)

    def group(name: str, help_: str):
        p = sub.add_parser(name, help=help_, parents=[common])
        return p.add_subparsers(dest="action", required=True)

    def action(parent, name: str, func, help_: str):
        p = parent.add_parser(name, help=help_, parents=[common])
        p.set_defaults(func=func)
        return p

    g = group("graphs", "graphs and graph morphisms")
    p = action(g, "laws", cmd_graphs_laws, "category laws and ghost-graph identities (bound = flags)")
    p.add_argument("--vertices", type=positive, default=3)
    p = action(g, "enumerate", cmd_graphs_enumerate, "graphs up to isomorphism (bound = flags)")
    p.add_argument("--vertices", type=positive, default=3)
    p.add_argument("--count", action="store_true")
    p = action(g, "compose", cmd_graphs_compose, "compose two morphisms given as JSON files")
    p.add_argument("first")
    p.add_argument("second")
    p = action(g, "ghost", cmd_graphs_ghost, "ghost graph of a morphism")
    p.add_argument("morphism")
    p = action(g, "check", cmd_graphs_check, "validate a graph or morphism document")
    p.add_argument("file")

    p = sub.add_parser("axioms", help="check the Feynman category axioms on a bounded fragment", parents=[common])
    p.add_argument("--category", "--cat", type=category_name, choices=AXIOM_CATEGORIES, required=True)
    p.add_argument("--vertices", type=positive, default=3, help="vertex bound for the graph category")
    p.set_defaults(func=cmd_axioms)

    g = group("finset", "finite-set categories")
    p = action(g, "hom", cmd_finset_hom, "list or count a hom-set")
    p.add_argument("--cat", type=category_name, choices=finsets.CATEGORY_TAGS, required=True)
    p.add_argument("--from", dest="source", type=natural, required=True)
    p.add_argument("--to", dest="target", type=natural, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true")
    mode.add_argument("--list", action="store_true")

    g = group("decorate", "decorations and covers")
    p = action(g, "check-cover", cmd_decorate_cover, "decide whether a functor is a cover")
    p.add_argument("--functor", choices=sorted(NAMED_FUNCTORS), required=True)

    g = group("ops", "representations: monoids, Kan extensions, free operads")
    p = action(g, "free", cmd_ops_free, "free operad on generators")
    p.add_argument("--flavor", choices=("ns", "nonsymmetric", "sym", "symmetric"), default="ns")
    p.add_argument("--gen", required=True, help="arity:count pairs, e.g. 2:1,3:1")
    p.add_argument("--upto", type=positive, default=5)
    p.add_argument("--count", action="store_true")
    p = action(g, "monoids", cmd_ops_monoids, "functoriality of the op of every associative table (bound = table order)")
    p.add_argument("--flavor", choices=FLAVORS, nargs="+", default=list(FLAVORS))
    p.add_argument("--size", type=positive, help="largest set the op is evaluated on (default: 4 for FS, 3 otherwise)")
    p = action(g, "kan", cmd_ops_kan, "induce the regular set of a subgroup by a left Kan extension")
    p.add_argument("--g", default="S3")
    p.add_argument("--h", default="Z2")
    p = action(g, "frobenius", cmd_ops_frobenius, "Frobenius reciprocity (bound = largest set)")
    p.add_argument("--g", default="S3")
    p.add_argument("--h", default="Z2")

    g = group("plus", "the plus construction")
    p = action(g, "hom", cmd_plus_hom, "forests between tensor powers of the unit color")
    p.add_argument("--base", choices=plus.BASES, default="trivial")
    p.add_argument("--level", choices=plus.LEVELS, default="plus")
    p.add_argument("--from", dest="source", type=natural, required=True)
    p.add_argument("--to", dest="target", type=natural, required=True)
    p.add_argument("--count", action="store_true")
    p = action(g, "equiv", cmd_plus_equiv, "compare hom-sets with their closed forms")
    p.add_argument("--base", choices=plus.BASES, default="trivial")
    p.add_argument("--level", choices=plus.LEVELS, default="gcp")

    g = group("hopf", "bialgebras of surjections")
    cats = hopf.LITERAL + hopf.CLASSES + ("Δ₊",)
    p = action(g, "coproduct", cmd_hopf_coproduct, "deconcatenation coproduct of one morphism")
    p.add_argument("--cat", type=category_name, choices=cats, default="OS")
    p.add_argument("--morphism", required=True, help='"n->m" or fiber sizes such as "2+1"')
    p = action(g, "check", cmd_hopf_check, "coassociativity, counit and bialgebra axioms (bound = source size)")
    p.add_argument("--cat", type=category_name, choices=hopf.LITERAL + hopf.CLASSES, default="OS")
    p = action(g, "antipode", cmd_hopf_antipode, "antipode of the quotient Hopf algebra (bound = degree)")
    p.add_argument("--cat", choices=("OS", "FS"), default="OS")

    g = group("transform", "bar, cobar and Feynman transforms")
    p = action(g, "ft", cmd_transform_ft, "the Feynman transform of a nonsymmetric operad")
    p.add_argument("--operad", choices=("ass", "trivial"), default="ass")
    p.add_argument("--upto", type=positive, default=5)
    p.add_argument("--emit-differential", action="store_true")
    p = action(g, "dsquared", cmd_transform_dsquared, "d^2 = 0 for edge contraction (bound = edges)")
    p.add_argument("--scheme", choices=transforms.ORDER_SCHEMES, default="level")
    p = action(g, "homology", cmd_transform_homology, "homology ranks of a truncated transform")
    p.add_argument("--construction", choices=("ft", "bar", "cobar-bar"), default="ft")
    p.add_argument("--operad", choices=("ass", "trivial"), default="ass")
    p.add_argument("--upto", type=positive, default=4)
    p = action(g, "master", cmd_transform_master, "master equation against the dg-map condition")
    p.add_argument("--trials", type=natural, default=20)
    p.add_argument("--arity", type=positive, default=4)

    g = group("wconstruct", "cubical W-construction")
    p = action(g, "associahedron", cmd_w_associahedron, "the cubical associahedron K_n")
    p.add_argument("--n", type=positive, required=True)
    p = action(g, "glue", cmd_w_glue, "image of K_n x K_m under the i-th gluing")
    p.add_argument("--n", type=positive, default=3)
    p.add_argument("--m", type=positive, default=3)
    p.add_argument("--i", type=positive, default=1)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"feyncat: error: {exc}", file=sys.stderr)
        return 2
    except CheckFailed:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
