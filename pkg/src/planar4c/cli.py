"""Command-line entry point: ``planar4c <subcommand> ...``.

Exit codes: 0 success or statement holds, 1 usage or input error,
2 counterexample or pipeline failure, 3 audit budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from . import io as pio
from .errors import ImproperInput, PipelineCounterexample, Planar4cError
from .graph import PolygonTriangulation, Triangulation
from .hamilton import find_hamilton_circuit, split_by_circuit
from .instances import generate, polygons
from .schemes import (
    EdgeColoring,
    OrientationAssignment,
    VertexColoring,
    ct2_to_e3c,
    e3c_to_ct2,
    e3c_to_v4c,
    is_proper_edge_coloring,
    is_proper_vertex_coloring,
    v4c_to_e3c,
)


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _graph(path: str):
    G = pio.load(path)
    if not isinstance(G, (Triangulation, PolygonTriangulation)):
        raise Planar4cError(f"{path} does not hold a triangulation or polygon")
    return G


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> int:
    params = {"depth": args.depth, "v": args.v, "i": args.i, "o": args.o, "seed": args.seed}
    T = generate(args.kind, **params)
    pio.write_text(args.output, pio.dumps(pio.triangulation_to_dict(T)))
    return 0


def cmd_enum(args) -> int:
    ps = polygons(args.v)
    if args.count_only:
        pio.write_text(args.output, pio.dumps(pio.document("count", v=args.v, count=len(ps))))
        return 0
    lines = []
    for i, P in enumerate(ps):
        d = pio.polygon_to_dict(P)
        d["index"] = i
        lines.append(pio.dumps(d))
    pio.write_text(args.output, "".join(lines))
    return 0


def cmd_split(args) -> int:
    T = _graph(args.input)
    circuit = _ints(args.circuit) if args.circuit else find_hamilton_circuit(T)
    if circuit is None:
        raise Planar4cError("no Hamilton circuit found")
    base = tuple(_ints(args.base)) if args.base else None
    sp = split_by_circuit(T, circuit, base)
    pio.write_text(args.output, pio.dumps(pio.split_to_dict(sp)))
    return 0


def cmd_convert(args) -> int:
    G = _graph(args.graph)
    x = pio.load(args.input)
    if isinstance(x, VertexColoring):
        ec = v4c_to_e3c(G, x)
    elif isinstance(x, EdgeColoring):
        ec = x
    elif isinstance(x, OrientationAssignment):
        ec = ct2_to_e3c(G, x, args.first_edge, args.first_color)
    else:
        raise Planar4cError(f"{args.input} does not hold a coloring")
    if args.to == "e3c":
        out = ec
    elif args.to == "ct2":
        out = e3c_to_ct2(G, ec)
    else:
        out = e3c_to_v4c(G, ec, args.seed_vertex, args.seed_color)
    pio.write_text(args.output, pio.dumps(pio.to_dict(out, G)))
    return 0


def cmd_solve(args) -> int:
    from .solver import check_solution, four_color, four_color_oracle

    T = _graph(args.input)
    if not isinstance(T, Triangulation):
        raise Planar4cError("solve needs a triangulation")
    circuit = _ints(args.circuit) if args.circuit else None
    base = tuple(_ints(args.base)) if args.base else None
    try:
        coloring, trace = four_color(T, circuit, base)
    except PipelineCounterexample as exc:
        doc = pio.document("pipeline-counterexample", message=str(exc), instance=exc.instance)
        pio.write_text(args.output, pio.dumps(doc))
        return 2
    check_solution(T, coloring, trace)
    doc = pio.vertex_coloring_to_dict(coloring)
    doc["colors_used"] = len(set(coloring.colors))
    if args.oracle:
        doc["oracle_agrees"] = four_color_oracle(T) is not None
    pio.write_text(args.output, pio.dumps(doc))
    if args.trace:
        pio.write_text(args.trace, pio.dumps(pio.document("trace", trace=trace.to_dict())))
    if args.dot:
        pio.write_text(args.dot, pio.to_dot(T, coloring))
    return 0


def cmd_audit(args) -> int:
    from .audit import audit, default_jobs

    jobs = args.jobs if args.jobs is not None else default_jobs()
    rep = audit(args.statement, args.max_v, args.budget, jobs, args.max_t)
    pio.write_text(args.report, pio.dumps(rep.to_dict()))
    print(
        f"{rep.statement}: {rep.verdict}, {rep.checked} checked in {rep.elapsed:.2f}s",
        file=sys.stderr,
    )
    return rep.exit_code


def cmd_export(args) -> int:
    G = _graph(args.input)
    coloring = pio.load(args.coloring) if args.coloring else None
    vc = coloring if isinstance(coloring, VertexColoring) else None
    ec = coloring if isinstance(coloring, EdgeColoring) else None
    if coloring is not None and vc is None and ec is None:
        raise Planar4cError("export takes a vertex or edge coloring")
    if args.format == "dot":
        text = pio.to_dot(G, vc, ec)
    else:
        doc = {"graph": pio.to_dict(G), "schema": pio.SCHEMA, "type": "export"}
        if vc is not None:
            if not is_proper_vertex_coloring(G, vc):
                raise ImproperInput("vertex coloring is not proper")
            doc["coloring"] = pio.to_dict(vc)
        if ec is not None:
            if not is_proper_edge_coloring(G, ec):
                raise ImproperInput("edge coloring is not proper")
            doc["coloring"] = pio.to_dict(ec, G)
        text = pio.dumps(doc)
    pio.write_text(args.output, text)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planar4c", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"planar4c {__version__} ({pio.SCHEMA})")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="output file (default: stdout)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized choices")
    common.add_argument("--jobs", type=int, default=None, help="worker processes")

    g = sub.add_parser("gen", parents=[common], help="generate a named triangulation")
    g.add_argument(
        "kind",
        choices=["complete4", "octahedron", "icosahedron", "stacked", "apollonian", "octahedral", "polygon-pair"],
    )
    g.add_argument("--depth", type=int, help="stacked / octahedral nesting depth")
    g.add_argument("--v", type=int, help="vertex count (polygon-pair, apollonian)")
    g.add_argument("--i", type=int, help="inner polygon index (polygon-pair)")
    g.add_argument("--o", type=int, help="outer polygon index (polygon-pair)")
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("enum", parents=[common], help="list triangulated polygons as JSON lines")
    e.add_argument("--v", type=int, required=True, help="polygon vertex count")
    e.add_argument("--count-only", action="store_true")
    e.set_defaults(func=cmd_enum)

    s = sub.add_parser("split", parents=[common], help="cut a triangulation along a Hamilton circuit")
    s.add_argument("input", help="triangulation JSON, or - for stdin")
    s.add_argument("--circuit", help="comma-separated vertex order")
    s.add_argument("--base", help="base edge as a,b")
    s.set_defaults(func=cmd_split)

    c = sub.add_parser("convert", parents=[common], help="convert between coloring schemes")
    c.add_argument("input", help="coloring JSON, or - for stdin")
    c.add_argument("--graph", required=True, help="triangulation or polygon JSON")
    c.add_argument("--to", required=True, choices=["v4c", "e3c", "ct2"])
    c.add_argument("--first-edge", type=int, default=0)
    c.add_argument("--first-color", type=int, default=0, choices=[0, 1, 2])
    c.add_argument("--seed-vertex", type=int, default=0)
    c.add_argument("--seed-color", type=int, default=0, choices=[0, 1, 2, 3])
    c.set_defaults(func=cmd_convert)

    v = sub.add_parser("solve", parents=[common], help="4-color a triangulation")
    v.add_argument("input", help="triangulation JSON, or - for stdin")
    v.add_argument("--trace", help="write the solve trace here")
    v.add_argument("--dot", help="write a colored DOT graph here")
    v.add_argument("--circuit", help="Hamilton circuit to use")
    v.add_argument("--base", help="base edge as a,b")
    v.add_argument("--oracle", action="store_true", help="also run the backtracking oracle")
    v.set_defaults(func=cmd_solve)

    a = sub.add_parser("audit", parents=[common], help="exhaustively check a statement")
    a.add_argument("--statement", required=True, choices=["T1", "T2", "T3", "T4", "C1", "S8", "TBL42"])
    a.add_argument("--max-v", type=int, help="vertex bound (largest t for TBL42)")
    a.add_argument("--max-t", type=int, help="triangle bound for T3 and T4")
    a.add_argument("--budget", type=float, help="seconds before stopping with exit 3")
    a.add_argument("--report", help="report file (default: stdout)")
    a.set_defaults(func=cmd_audit)

    x = sub.add_parser("export", parents=[common], help="export a graph, optionally colored")
    x.add_argument("input", help="triangulation or polygon JSON, or - for stdin")
    x.add_argument("--coloring", help="vertex or edge coloring JSON")
    x.add_argument("--format", choices=["json", "dot"], default="json")
    x.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PipelineCounterexample as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (Planar4cError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
