"""JSON documents and Graphviz DOT export.

Every document carries ``schema`` and ``type`` keys and is written with
sorted keys and a trailing newline, so equal inputs give equal bytes.
Triangulations and polygons store their dart pairing (``twin``) next to the
triangles; that keeps parallel edges unambiguous on the way back in.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

from .errors import ImproperInput
from .graph import PolygonTriangulation, TriangleComplex, Triangulation, build_polygon, build_triangulation
from .hamilton import HamiltonSplit
from .schemes import (
    EDGE_COLORS,
    VERTEX_COLORS,
    EdgeColoring,
    OrientationAssignment,
    VertexColoring,
    is_proper_edge_coloring,
    is_proper_vertex_coloring,
)

SCHEMA = "planar4c/1"

# fill colors for C, M, Y, K and stroke colors for r, g, b
DOT_FILL = {"C": "cyan", "M": "magenta", "Y": "yellow", "K": "gray30"}
DOT_EDGE = {"r": "red", "g": "green3", "b": "blue"}


def document(kind: str, **body) -> dict:
    return {"schema": SCHEMA, "type": kind, **body}


# ---------------------------------------------------------------------------
# to dict


def triangulation_to_dict(T: Triangulation) -> dict:
    d = document(
        "triangulation",
        v=T.v,
        triangles=[list(t) for t in T.triangles],
        twin=list(T.twin),
    )
    if T.labels is not None and list(T.labels) != list(range(T.v)):
        d["labels"] = list(T.labels)
    return d


def polygon_to_dict(P: PolygonTriangulation) -> dict:
    return document(
        "polygon",
        perimeter=list(P.perimeter),
        base=list(P.base),
        triangles=[list(t) for t in P.triangles],
        twin=list(P.twin),
        diagonals=[list(e) for e in P.diagonals] if P.v_i == 0 and P.v_p >= 3 else None,
    )


def split_to_dict(sp: HamiltonSplit) -> dict:
    return document(
        "split",
        circuit=list(sp.circuit),
        base=list(sp.base),
        inner=polygon_to_dict(sp.inner),
        outer=polygon_to_dict(sp.outer),
    )


def vertex_coloring_to_dict(c: VertexColoring) -> dict:
    return document("vertex-coloring", colors=str(c))


def edge_coloring_to_dict(G: TriangleComplex, ec: EdgeColoring) -> dict:
    return document("edge-coloring", edges=[list(e) for e in G.edges], colors=str(ec))


def orientation_to_dict(a: OrientationAssignment) -> dict:
    return document("orientation", values="".join(str(x) for x in a.values))


def to_dict(obj, G: TriangleComplex | None = None) -> dict:
    if isinstance(obj, PolygonTriangulation):
        return polygon_to_dict(obj)
    if isinstance(obj, Triangulation):
        return triangulation_to_dict(obj)
    if isinstance(obj, HamiltonSplit):
        return split_to_dict(obj)
    if isinstance(obj, VertexColoring):
        return vertex_coloring_to_dict(obj)
    if isinstance(obj, EdgeColoring):
        if G is None:
            raise ValueError("edge colorings need their graph")
        return edge_coloring_to_dict(G, obj)
    if isinstance(obj, OrientationAssignment):
        return orientation_to_dict(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# ---------------------------------------------------------------------------
# from dict


def from_dict(d: dict):
    kind = d.get("type")
    if kind == "triangulation":
        return build_triangulation(d["triangles"], twin=d.get("twin"), labels=d.get("labels"))
    if kind == "polygon":
        return build_polygon(d["perimeter"], d["triangles"], twin=d.get("twin"))
    if kind == "split":
        return HamiltonSplit(
            tuple(d["circuit"]), tuple(d["base"]), from_dict(d["inner"]), from_dict(d["outer"])
        )
    if kind == "vertex-coloring":
        return VertexColoring(tuple(VERTEX_COLORS.index(ch) for ch in d["colors"]))
    if kind == "edge-coloring":
        return EdgeColoring(tuple(EDGE_COLORS.index(ch) for ch in d["colors"]))
    if kind == "orientation":
        return OrientationAssignment(tuple(int(ch) for ch in d["values"]))
    raise ValueError(f"unknown document type {kind!r}")


# ---------------------------------------------------------------------------
# text


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def read_text(path: str) -> str:
    """File contents; ``-`` reads standard input."""
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def write_text(path: str | None, text: str) -> None:
    """Write to ``path``; ``None`` or ``-`` writes standard output."""
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def load(path: str):
    return from_dict(json.loads(read_text(path)))


def to_dot(
    G: TriangleComplex,
    coloring: VertexColoring | None = None,
    edge_coloring: EdgeColoring | None = None,
    name: str = "G",
) -> str:
    """Undirected DOT text, one line per edge (parallel edges repeat).

    Raises:
        ImproperInput: if a given coloring is not proper on ``G``.
    """
    if coloring is not None and not is_proper_vertex_coloring(G, coloring):
        raise ImproperInput("vertex coloring is not proper")
    if edge_coloring is not None and not is_proper_edge_coloring(G, edge_coloring):
        raise ImproperInput("edge coloring is not proper")
    lines = [f"graph {name} {{", "  node [shape=circle, style=filled, fillcolor=white];"]
    for u in G.vertices:
        if coloring is not None:
            ch = VERTEX_COLORS[coloring.colors[u]]
            lines.append(f'  {u} [label="{u}:{ch}", fillcolor={DOT_FILL[ch]}];')
        else:
            lines.append(f"  {u};")
    for eid, (a, b) in enumerate(G.edges):
        if edge_coloring is not None:
            ch = EDGE_COLORS[edge_coloring.colors[eid]]
            lines.append(f'  {a} -- {b} [color={DOT_EDGE[ch]}, label="{ch}"];')
        else:
            lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
