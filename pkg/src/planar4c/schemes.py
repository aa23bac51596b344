"""Vertex 4-colorings, Tait edge 3-colorings and triangle orientation numberings.

Conventions:

* vertex colors ``C, M, Y, K`` are the integers 0..3, read as 2-bit vectors
  (0,0), (0,1), (1,0), (1,1);
* edge colors ``r, g, b`` are 0, 1, 2;
* an edge between vertex colors ``x`` and ``y`` gets color ``(x ^ y) - 1``,
  so the three nonzero Klein-group elements map to r, g, b;
* a triangle has orientation 1 when its edge colors increase by one (mod 3)
  stepping along the stored triple order, 2 when they decrease.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import ImproperInput, IncompleteAssignment, Inconsistent, NotGood
from .graph import TriangleComplex, Triangulation, next_dart

VERTEX_COLORS = "CMYK"
EDGE_COLORS = "rgb"


@dataclass(frozen=True)
class VertexColoring:
    colors: tuple[int, ...]

    def __str__(self):
        return "".join(VERTEX_COLORS[c] for c in self.colors)


@dataclass(frozen=True)
class EdgeColoring:
    colors: tuple[int, ...]

    def __str__(self):
        return "".join(EDGE_COLORS[c] for c in self.colors)


@dataclass(frozen=True)
class OrientationAssignment:
    values: tuple[int, ...]

    @classmethod
    def from_mask(cls, mask: int, t: int) -> "OrientationAssignment":
        return cls(tuple(2 if (mask >> k) & 1 else 1 for k in range(t)))

    def to_mask(self) -> int:
        return sum(1 << k for k, x in enumerate(self.values) if x == 2)


@dataclass(frozen=True)
class VertexNumbering:
    values: dict

    def __getitem__(self, u):
        return self.values[u]

    def restricted(self, verts) -> tuple[int, ...]:
        return tuple(self.values[u] for u in verts)


# ---------------------------------------------------------------------------
# orientations and vertex sums


def _check_total(G: TriangleComplex, a: OrientationAssignment) -> None:
    if len(a.values) != G.t:
        raise IncompleteAssignment(f"{len(a.values)} values for {G.t} triangles")
    if any(x not in (1, 2) for x in a.values):
        raise IncompleteAssignment("orientation values must be 1 or 2")


def cv3_from_ct2(G: TriangleComplex, a: OrientationAssignment) -> VertexNumbering:
    """Per-vertex sum mod 3 of incident orientation values."""
    _check_total(G, a)
    sums = {u: 0 for u in G.vertices}
    for tri, x in zip(G.triangles, a.values):
        for u in tri:
            sums[u] += x
    return VertexNumbering({u: s % 3 for u, s in sums.items()})


def is_good(G: TriangleComplex, a: OrientationAssignment) -> bool:
    return all(x == 0 for x in cv3_from_ct2(G, a).values.values())


def complement(a: OrientationAssignment) -> OrientationAssignment:
    return OrientationAssignment(tuple(3 - x for x in a.values))


def add_partial(x: int, y: int) -> int:
    """Combine two partial vertex numbers of the same vertex."""
    return (x + y) % 3


# ---------------------------------------------------------------------------
# validity


def is_proper_vertex_coloring(T: TriangleComplex, c: VertexColoring) -> bool:
    return all(c.colors[a] != c.colors[b] for a, b in T.edges)


def is_proper_edge_coloring(G: TriangleComplex, ec: EdgeColoring) -> bool:
    if len(ec.colors) != G.e:
        return False
    for i in range(G.t):
        if len({ec.colors[x] for x in G.triangle_edges(i)}) != 3:
            return False
    return True


# ---------------------------------------------------------------------------
# V4c <-> E3c


def v4c_to_e3c(T: TriangleComplex, c: VertexColoring) -> EdgeColoring:
    out = []
    for a, b in T.edges:
        x = c.colors[a] ^ c.colors[b]
        if x == 0:
            raise ImproperInput(f"edge {a}-{b} is monochromatic")
        out.append(x - 1)
    return EdgeColoring(tuple(out))


def e3c_to_v4c(
    T: Triangulation, ec: EdgeColoring, seed_vertex: int = 0, seed_color: int = 0
) -> VertexColoring:
    """Recover vertex colors by XOR-walking edges out from ``seed_vertex``."""
    if not is_proper_edge_coloring(T, ec):
        raise ImproperInput("edge coloring is not proper")
    color: dict[int, int] = {seed_vertex: seed_color}
    adj: dict[int, list[tuple[int, int]]] = {u: [] for u in T.vertices}
    for eid, (a, b) in enumerate(T.edges):
        adj[a].append((b, eid))
        adj[b].append((a, eid))
    queue = deque([seed_vertex])
    while queue:
        u = queue.popleft()
        for w, eid in adj[u]:
            want = color[u] ^ (ec.colors[eid] + 1)
            if w not in color:
                color[w] = want
                queue.append(w)
            elif color[w] != want:
                raise Inconsistent(f"vertex {w} reached with two colors")
    return VertexColoring(tuple(color[u] for u in sorted(color)))


# ---------------------------------------------------------------------------
# E3c <-> CT2#


def e3c_to_ct2(G: TriangleComplex, ec: EdgeColoring) -> OrientationAssignment:
    if not is_proper_edge_coloring(G, ec):
        raise ImproperInput("edge coloring is not proper")
    vals = []
    for i in range(G.t):
        c0, c1, _ = (ec.colors[x] for x in G.triangle_edges(i))
        vals.append((c1 - c0) % 3)
    return OrientationAssignment(tuple(vals))


def ct2_to_e3c(
    G: TriangleComplex, a: OrientationAssignment, first_edge: int = 0, first_color: int = 0
) -> EdgeColoring:
    """Propagate edge colors breadth-first over the dual graph.

    Inside a triangle with value ``x`` each edge color is the previous one
    plus ``x`` (mod 3), in stored triple order.  Raises :class:`NotGood` with
    a witness dual cycle when propagation contradicts itself.
    """
    _check_total(G, a)
    colors = [-1] * G.e
    parent = [-1] * G.t
    seen = [False] * G.t
    d0 = G.edge_darts[first_edge][0]
    colors[first_edge] = first_color
    root = d0 // 3
    seen[root] = True
    queue = deque([(root, d0 % 3)])
    while queue:
        i, k = queue.popleft()
        x = a.values[i]
        base_color = colors[G.edge_of[3 * i + k]]
        for step in (1, 2):
            q = (k + step) % 3
            eid = G.edge_of[3 * i + q]
            want = (base_color + step * x) % 3
            if colors[eid] < 0:
                colors[eid] = want
            elif colors[eid] != want:
                raise NotGood(
                    f"edge {eid} gets colors {colors[eid]} and {want}",
                    _witness(G, parent, i, eid),
                )
        for q in range(3):
            o = G.twin[3 * i + q]
            if o >= 0 and not seen[o // 3]:
                seen[o // 3] = True
                parent[o // 3] = i
                queue.append((o // 3, o % 3))
    return EdgeColoring(tuple(colors))


def _witness(G: TriangleComplex, parent, i, eid) -> tuple[int, ...]:
    """Dual cycle through triangle ``i`` and the earlier owner of edge ``eid``."""
    d, o = G.edge_darts[eid]
    other = o // 3 if d // 3 == i else d // 3
    if o < 0:
        other = d // 3

    def path(x):
        out = [x]
        while parent[x] >= 0:
            x = parent[x]
            out.append(x)
        return out

    pa, pb = path(i), path(other)
    common = next(x for x in pa if x in set(pb))
    left = pa[: pa.index(common) + 1]
    right = pb[: pb.index(common)]
    return tuple(left + right[::-1])


def path_rule(first_color: int, partials) -> int:
    """Color of the last edge on a path from the first edge color and the
    partial vertex numbers collected on the path's right side."""
    return (first_color + sum(partials)) % 3


def right_side_partial(G: TriangleComplex, a: OrientationAssignment, d_in: int, d_out: int) -> int:
    """Sum of orientation values swept at ``head(d_in)`` turning from the
    reversed incoming dart to ``d_out``, on the right of the walk."""
    d = G.twin[d_in]
    if d < 0:
        raise ValueError("incoming dart lies on a border")
    total = 0
    while d != d_out:
        o = G.twin[d]
        if o < 0:
            raise ValueError("walk leaves the complex")
        total += a.values[o // 3]
        d = next_dart(o)
    return total % 3


def color_along_path(G: TriangleComplex, a: OrientationAssignment, darts, first_color: int) -> int:
    """Apply the path rule along consecutive darts ``d0, d1, ..., dk``."""
    partials = [right_side_partial(G, a, darts[j], darts[j + 1]) for j in range(len(darts) - 1)]
    return path_rule(first_color, partials)


# ---------------------------------------------------------------------------
# CT2# -> V4c


def ct2_to_v4c(
    T: Triangulation,
    a: OrientationAssignment,
    first_edge: int = 0,
    first_color: int = 0,
    seed_vertex: int = 0,
    seed_color: int = 0,
) -> VertexColoring:
    ec = ct2_to_e3c(T, a, first_edge, first_color)
    return e3c_to_v4c(T, ec, seed_vertex, seed_color)


# ---------------------------------------------------------------------------
# orbits


def orbit(x, G: TriangleComplex | None = None) -> frozenset:
    """All colorings related to ``x`` by renaming colors (or complementing)."""
    if isinstance(x, VertexColoring):
        if G is not None and not is_proper_vertex_coloring(G, x):
            raise ImproperInput("vertex coloring is not proper")
        return frozenset(
            VertexColoring(tuple(p[c] for c in x.colors)) for p in itertools.permutations(range(4))
        )
    if isinstance(x, EdgeColoring):
        if G is not None and not is_proper_edge_coloring(G, x):
            raise ImproperInput("edge coloring is not proper")
        return frozenset(
            EdgeColoring(tuple(p[c] for c in x.colors)) for p in itertools.permutations(range(3))
        )
    if isinstance(x, OrientationAssignment):
        if G is not None and not is_good(G, x):
            raise ImproperInput("orientation assignment is not good")
        return frozenset({x, complement(x)})
    raise TypeError(f"no orbit for {type(x).__name__}")


def all_good_assignments(G: TriangleComplex, constrained=None):
    """Every assignment whose numbering vanishes on ``constrained`` vertices."""
    from . import _kernels

    if constrained is None:
        constrained = G.vertices
    idx = G.local_index()
    weights = _kernels.digit_weights(len(idx), [idx[u] for u in constrained])
    codes = _kernels.cv3_codes(G.incidence_array(), len(idx), weights)
    return [OrientationAssignment.from_mask(int(m), G.t) for m in np.flatnonzero(codes == 0)]
