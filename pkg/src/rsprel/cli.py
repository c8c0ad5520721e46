"""Command line entry point: ``rsprel <verb> ...``.

Exit codes: 0 success or property holds, 1 property fails, 2 input or
contract error, 3 resource refusal. Failures print one line to stderr of the
form ``error: <kind>: <reason>``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .covers import (
    build_cross_cover,
    build_self_cover,
    compose_common_cover,
    connect_cover,
    connect_quasicover,
    check_layer_regularity,
    format_map,
    parse_map,
)
from .errors import InputError, RspError
from .generators import FixtureSpec, k5_choice_scripts, named_fixture
from .graph import Graph, enumerate_squares, format_graph, format_squares, parse_graph
from .products import KINDS, build_product, format_coords, product_relation
from .quotients import (
    class_subgraph,
    format_partition,
    is_equitable,
    layer_partition,
    parse_partition,
    quotient_graph,
    quotient_product_holds,
    refined_partition,
)
from .relations import (
    EdgeRelation,
    compute_delta0,
    compute_delta1,
    compute_tau,
    format_relation,
    parse_relation,
    transitive_closure,
)
from .rsp import (
    algorithm1,
    check_rsp,
    check_well_behaved,
    find_refinement,
    format_script,
    oracle_finest,
    parse_script,
)

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message.replace("\n", " "))


class _Out:
    """Collects named text artifacts plus a JSON-able report for one command."""

    def __init__(self, args):
        self.args = args
        self.sections: list[tuple[str, str, str]] = []
        self.report: dict = {}
        self.dot: str | None = None

    def add(self, name: str, suffix: str, text: str) -> None:
        self.sections.append((name, suffix, text))

    def emit(self) -> None:
        args = self.args
        if args.json:
            text = json.dumps(self.report, sort_keys=True, separators=(",", ":")) + "\n"
        elif args.dot:
            if self.dot is None:
                raise InputError(f"verb {args.verb!r} has no graph to draw")
            text = self.dot
        elif args.output and len(self.sections) > 1:
            for _, suffix, body in self.sections:
                Path(f"{args.output}.{suffix}").write_text(body)
            return
        elif len(self.sections) == 1:
            text = self.sections[0][2]
        else:
            text = "".join(f"# {name}\n{body}" for name, _, body in self.sections)
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _graph(path: str) -> Graph:
    return parse_graph(_read(path))


def _relation(path: str, g: Graph) -> EdgeRelation:
    return parse_relation(_read(path), g)


def _edges_json(g: Graph) -> list:
    return [list(e) for e in g.edges]


def _classes_json(g: Graph, r: EdgeRelation) -> list:
    return [[list(g.edges[e]) for e in sorted(c)] for c in r.classes]


def to_dot(g: Graph, r: EdgeRelation | None = None) -> str:
    lines = ["graph G {"]
    lines += [f"  {v};" for v in range(g.vertex_count)]
    for e, (u, v) in enumerate(g.edges):
        if r is None:
            lines.append(f"  {u} -- {v};")
        else:
            c = r.class_of[e]
            lines.append(f'  {u} -- {v} [color="{PALETTE[c % len(PALETTE)]}", label="{c}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _emit_graph_relation(out: _Out, g: Graph, r: EdgeRelation | None) -> None:
    out.add("graph", "edges", format_graph(g))
    out.report.update(vertex_count=g.vertex_count, edges=_edges_json(g))
    if r is not None:
        out.add("relation", "rel", format_relation(g, r))
        out.report.update(class_count=r.class_count, classes=_classes_json(g, r))
    out.dot = to_dot(g, r)


def cmd_squares(args, out: _Out) -> int:
    g = _graph(args.graph)
    sqs = enumerate_squares(g)
    out.add("squares", "squares", format_squares(sqs))
    out.report.update(count=len(sqs), squares=[list(s.vertices) for s in sqs])
    return 0


def cmd_relation(args, out: _Out) -> int:
    g = _graph(args.graph)
    if args.script and args.kind != "alg1":
        raise InputError("--script only applies to --kind alg1")
    if args.kind == "alg1":
        steps = parse_script(_read(args.script)) if args.script else None
        trace: list = []
        r = algorithm1(g, steps, trace)
        out.report["merges"] = [[list(e), list(f), list(sq)] for e, f, sq in trace]
    else:
        pairs = {"tau": compute_tau, "delta0": compute_delta0, "delta1": compute_delta1}[args.kind](g)
        r = transitive_closure(pairs, g.edge_count)
        out.report["pairs"] = [[list(g.edges[e]), list(g.edges[f])] for e, f in pairs]
    out.add("relation", "rel", format_relation(g, r))
    out.report.update(kind=args.kind, class_count=r.class_count, classes=_classes_json(g, r))
    out.dot = to_dot(g, r)
    return 0


def _need_relation(args, g: Graph) -> EdgeRelation:
    if not args.relation:
        raise InputError(f"check --what {args.what} needs a relation file")
    return _relation(args.relation, g)


def cmd_check(args, out: _Out) -> int:
    g = _graph(args.graph)
    what = args.what
    out.report["what"] = what
    if what == "equitable" and args.partition:
        p = parse_partition(_read(args.partition), g.vertex_count)
        cert = is_equitable(g, p)
        ok = cert is not None
        text = "equitable: holds\n" + cert.format() if ok else "equitable: fails\n"
        out.report.update(holds=ok, matrix=cert.matrix.tolist() if ok else None)
        out.add("report", "txt", text)
        return 0 if ok else 1

    r = _need_relation(args, g)
    if what == "rsp":
        rep = check_rsp(g, r)
        out.report.update(holds=rep.holds, witness=[list(x) for x in rep.witness] if rep.witness else None)
        out.add("report", "txt", rep.describe() + "\n")
        return 0 if rep.holds else 1
    if what == "wellbehaved":
        wit = check_well_behaved(g, r)
        out.report.update(holds=wit is None, witness=None if wit is None else wit.describe())
        out.add("report", "txt", "wellbehaved: holds\n" if wit is None else f"wellbehaved: fails {wit.describe()}\n")
        return 0 if wit is None else 1
    if what == "finest":
        ref = find_refinement(g, r, args.limit or 1 << 24)
        out.report.update(holds=ref is None, refinement=None if ref is None else _classes_json(g, ref))
        if ref is None:
            out.add("report", "txt", "finest: holds\n")
            return 0
        out.add("report", "txt", "finest: fails, proper RSP refinement follows\n" + format_relation(g, ref))
        return 1
    if what == "equitable":
        lines, ok, blocks = [], True, {}
        for c in range(r.class_count):
            cert = is_equitable(class_subgraph(g, r, c), layer_partition(g, r, c, complement=True))
            blocks[str(c)] = cert is not None
            ok &= cert is not None
            lines.append(f"class {c}: {'equitable' if cert is not None else 'not equitable'}")
        cert = is_equitable(g, refined_partition(g, r))
        ok &= cert is not None
        lines.append(f"refined partition: {'equitable' if cert is not None else 'not equitable'}")
        out.report.update(holds=ok, per_class=blocks, refined=cert is not None)
        out.add("report", "txt", f"equitable: {'holds' if ok else 'fails'}\n" + "\n".join(lines) + "\n")
        return 0 if ok else 1
    # regularity
    classes = [args.cls] if args.cls is not None else list(range(r.class_count))
    per = {str(c): check_layer_regularity(g, r, c) for c in classes}
    ok = all(per.values())
    out.report.update(holds=ok, per_class=per)
    body = "".join(f"class {c}: {'regular' if v else 'irregular'}\n" for c, v in per.items())
    out.add("report", "txt", f"regularity: {'holds' if ok else 'fails'}\n" + body)
    return 0 if ok else 1


def cmd_finest(args, out: _Out) -> int:
    g = _graph(args.graph)
    if args.oracle:
        rels = oracle_finest(g, args.limit or 12)
        counts = sorted({r.class_count for r in rels})
        out.report.update(count=len(rels), class_counts=counts, relations=[_classes_json(g, r) for r in rels])
        text = f"# {len(rels)} finest relations, class counts {counts}\n"
        text += "".join(f"# relation {i}\n{format_relation(g, r)}" for i, r in enumerate(rels))
        out.add("finest", "txt", text)
        return 0
    r = algorithm1(g)
    ref = find_refinement(g, r, args.limit or 1 << 24)
    out.report.update(classes=_classes_json(g, r), finest=ref is None)
    out.add("relation", "rel", format_relation(g, r))
    out.dot = to_dot(g, r)
    return 0 if ref is None else 1


def cmd_quotient(args, out: _Out) -> int:
    g = _graph(args.graph)
    r = _relation(args.relation, g)
    p = refined_partition(g, r)
    q = quotient_graph(g, p)
    ok = quotient_product_holds(g, r, args.limit or 24)
    out.add("partition", "part", format_partition(p))
    out.add("quotient", "edges", format_graph(q))
    out.add("verdict", "txt", f"quotprod: {'holds' if ok else 'fails'}\n")
    out.report.update(
        partition=list(p.block_of),
        quotient={"vertex_count": q.vertex_count, "edges": _edges_json(q)},
        quotprod=ok,
    )
    out.dot = to_dot(q)
    return 0 if ok else 1


def cmd_cover(args, out: _Out) -> int:
    mode, paths = args.mode, args.inputs
    if mode in ("cross", "self"):
        if len(paths) != 2 or args.cls is None:
            raise InputError(f"cover --mode {mode} needs GRAPH RELATION and --class")
        g = _graph(paths[0])
        r = _relation(paths[1], g)
        if mode == "cross":
            if args.x is None or args.y is None:
                raise InputError("cover --mode cross needs --x and --y")
            cov = build_cross_cover(g, r, args.cls, args.x, args.y)
        else:
            cov = build_self_cover(g, r, args.cls, args.x)
        m1, m2 = cov.classify(1), cov.classify(2)
        out.add("cover", "edges", format_graph(cov.graph))
        out.add("f1", "f1.map", format_map(cov.f1))
        out.add("f2", "f2.map", format_map(cov.f2))
        out.report.update(
            mode=mode,
            nodes=[list(nd) for nd in cov.nodes],
            edges=_edges_json(cov.graph),
            f1={"classification": m1.classification, "fibers": m1.fiber_sizes},
            f2={"classification": m2.classification, "fibers": m2.fiber_sizes},
        )
        out.dot = to_dot(cov.graph)
        return 0
    if mode == "connect":
        if len(paths) == 2:
            g, base = _graph(paths[0]), _graph(paths[1])
            if not args.map:
                raise InputError("cover --mode connect GRAPH BASE needs --map")
            joined = connect_cover(g, base, parse_map(_read(args.map), g.vertex_count))
        elif len(paths) == 3:
            g1, g2, g = (_graph(p) for p in paths)
            if not (args.f1 and args.f2):
                raise InputError("cover --mode connect G1 G2 G needs --f1 and --f2")
            n = g.vertex_count
            joined = connect_quasicover(g1, g2, g, parse_map(_read(args.f1), n), parse_map(_read(args.f2), n))
        else:
            raise InputError("cover --mode connect takes GRAPH BASE or G1 G2 G")
    else:
        if len(paths) != 3 or not (args.map12 and args.map23):
            raise InputError("cover --mode compose needs H12 G2 H23 --map12 --map23")
        h12, g2, h23 = (_graph(p) for p in paths)
        m12 = parse_map(_read(args.map12), h12.vertex_count)
        m23 = parse_map(_read(args.map23), h23.vertex_count)
        joined = compose_common_cover(h12, g2, h23, (m12, m23))
    _emit_graph_relation(out, joined.graph, joined.relation)
    out.report["mode"] = mode
    return 0


def cmd_gen(args, out: _Out) -> int:
    if bool(args.name) == bool(args.product):
        raise InputError("gen needs exactly one of --name or --product")
    if args.product:
        if len(args.factors) < 2:
            raise InputError("gen --product needs at least two factor files")
        p = build_product(args.product, [_graph(f) for f in args.factors])
        out.add("graph", "edges", format_graph(p.graph))
        out.add("coords", "coords", format_coords(p))
        out.report.update(
            kind=p.kind, vertex_count=p.graph.vertex_count, edges=_edges_json(p.graph),
            coords=[list(c) for c in p.coords],
        )
        out.dot = to_dot(p.graph)
        return 0
    params = tuple(args.factors and [int(x) for x in args.factors] or ())
    params += tuple(v for v in (args.m, args.n, args.k) if v is not None)
    g, r = named_fixture(FixtureSpec(args.name, params))
    _emit_graph_relation(out, g, r)
    if args.name == "k5_paper_orderings":
        first, second = k5_choice_scripts()
        out.add("script1", "script1", format_script(first))
        out.add("script2", "script2", format_script(second))
    out.report["name"] = args.name
    return 0


def cmd_product(args, out: _Out) -> int:
    if len(args.factor) < 2:
        raise InputError("product needs at least two --factor GRAPH [RELATION]")
    graphs, rels = [], []
    for spec in args.factor:
        if len(spec) > 2:
            raise InputError("--factor takes GRAPH [RELATION]")
        g = _graph(spec[0])
        graphs.append(g)
        rels.append(_relation(spec[1], g) if len(spec) == 2 else EdgeRelation.trivial(g.edge_count))
    p = build_product(args.kind, graphs)
    r = product_relation(p, rels)
    _emit_graph_relation(out, p.graph, r)
    out.add("coords", "coords", format_coords(p))
    out.report.update(kind=p.kind, coords=[list(c) for c in p.coords])
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a one-line JSON report")
    common.add_argument("--dot", action="store_true", help="print Graphviz DOT, edges colored by class")
    common.add_argument("-o", "--output", help="output file, or file prefix for multi-part results")
    common.add_argument("--limit", type=int, help="budget for exhaustive searches")

    ap = _Parser(prog="rsprel", description="Relaxed-square-property relations on finite simple graphs.")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("squares", parents=[common], help="list all 4-cycles")
    s.add_argument("graph")

    s = sub.add_parser("relation", parents=[common], help="bounding relations and the greedy RSP relation")
    s.add_argument("--kind", choices=("tau", "delta0", "delta1", "alg1"), required=True)
    s.add_argument("--script", help="choice script for --kind alg1")
    s.add_argument("graph")

    s = sub.add_parser("check", parents=[common], help="test a property of a relation or partition")
    s.add_argument("--what", choices=("rsp", "wellbehaved", "finest", "equitable", "regularity"), required=True)
    s.add_argument("--partition", help="partition file for --what equitable")
    s.add_argument("--class", dest="cls", type=int, help="restrict --what regularity to one class")
    s.add_argument("graph")
    s.add_argument("relation", nargs="?")

    s = sub.add_parser("finest", parents=[common], help="finest RSP relations")
    s.add_argument("--oracle", action="store_true", help="enumerate all finest relations exhaustively")
    s.add_argument("graph")

    s = sub.add_parser("quotient", parents=[common], help="refined partition, quotient and product comparison")
    s.add_argument("graph")
    s.add_argument("relation")

    s = sub.add_parser("cover", parents=[common], help="cover graph constructions")
    s.add_argument("--mode", choices=("cross", "self", "connect", "compose"), required=True)
    s.add_argument("--class", dest="cls", type=int)
    s.add_argument("--x", type=int)
    s.add_argument("--y", type=int)
    s.add_argument("--map", help="covering map file for connect GRAPH BASE")
    s.add_argument("--f1")
    s.add_argument("--f2")
    s.add_argument("--map12")
    s.add_argument("--map23")
    s.add_argument("inputs", nargs="+")

    s = sub.add_parser("gen", parents=[common], help="named fixtures and products of graph files")
    s.add_argument("--name")
    s.add_argument("--product", choices=KINDS)
    s.add_argument("--m", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("factors", nargs="*", help="factor files for --product, integer parameters for --name")

    s = sub.add_parser("product", parents=[common], help="product graph with its product relation")
    s.add_argument("kind", choices=KINDS)
    s.add_argument("--factor", action="append", nargs="+", default=[], metavar="FILE")
    return ap


COMMANDS = {
    "squares": cmd_squares,
    "relation": cmd_relation,
    "check": cmd_check,
    "finest": cmd_finest,
    "quotient": cmd_quotient,
    "cover": cmd_cover,
    "gen": cmd_gen,
    "product": cmd_product,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.json and args.dot:
            raise InputError("--json and --dot are exclusive")
        out = _Out(args)
        code = COMMANDS[args.verb](args, out)
        out.emit()
        return code
    except RspError as exc:
        print(f"error: {exc.kind}: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
