"""Hamilton circuits, the split into two polygons, and the rebuild order."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import DegeneratePolygon, EdgeNotOnCircuit, NotHamiltonian
from .graph import (
    PolygonTriangulation,
    Triangulation,
    reverse_triple,
    reversed_dart,
)
from .polygon import add_ear, associate


@dataclass(frozen=True)
class HamiltonSplit:
    circuit: tuple[int, ...]
    base: tuple[int, int]
    inner: PolygonTriangulation
    outer: PolygonTriangulation


# ---------------------------------------------------------------------------
# search


class _Search:
    """Depth-first circuit extension with degree pruning and forced moves."""

    def __init__(self, T: Triangulation):
        self.n = T.v
        self.adj = {u: sorted(T.neighbors[u]) for u in T.vertices}
        self.nodes = 0

    def circuits(self, prefix: list[int]) -> Iterator[list[int]]:
        path = list(prefix)
        used = [False] * self.n
        for u in path:
            used[u] = True
        yield from self._extend(path, used)

    def _avail(self, w, used, start, end):
        cnt = 0
        for x in self.adj[w]:
            if not used[x] or x == end or x == start:
                cnt += 1
        return cnt

    def _extend(self, path, used):
        self.nodes += 1
        start, end = path[0], path[-1]
        if len(path) == self.n:
            if start in self.adj[end] and self.n > 2:
                yield list(path)
            return
        forced = []
        for w in range(self.n):
            if used[w]:
                continue
            a = self._avail(w, used, start, end)
            if a < 2:
                return
            # end has one free slot left, so two such neighbours cannot both be served
            if a == 2 and len(path) > 1 and end in self.adj[w]:
                forced.append(w)
        if len(forced) > 1:
            return
        if forced:
            cands = forced
        else:
            cands = [w for w in self.adj[end] if not used[w]]
            cands.sort(key=lambda w: (self._avail(w, used, start, end), w))
        for w in cands:
            used[w] = True
            path.append(w)
            yield from self._extend(path, used)
            path.pop()
            used[w] = False


def find_hamilton_circuit(T: Triangulation, through=None) -> list[int] | None:
    """A Hamilton circuit as a vertex list (containing edge ``through`` if
    given), or ``None`` after exhaustive search."""
    s = _Search(T)
    if through is not None:
        a, b = through
        if b not in T.neighbors.get(a, ()):
            return None
        prefix = [a, b]
    else:
        prefix = [0]
    return next(s.circuits(prefix), None)


def all_hamilton_circuits(T: Triangulation) -> Iterator[tuple[int, ...]]:
    """Every Hamilton circuit once, starting at vertex 0, direction fixed by
    requiring the second vertex to be smaller than the last."""
    for c in _Search(T).circuits([0]):
        if c[1] < c[-1]:
            yield tuple(c)


def is_hamilton_circuit(T: Triangulation, circuit) -> bool:
    if sorted(circuit) != list(range(T.v)):
        return False
    n = len(circuit)
    return all(circuit[(i + 1) % n] in T.neighbors[circuit[i]] for i in range(n))


def circuit_edges(circuit) -> list[tuple[int, int]]:
    n = len(circuit)
    return [(circuit[i], circuit[(i + 1) % n]) for i in range(n)]


def default_base(circuit) -> tuple[int, int]:
    """Lexicographically smallest circuit edge, as a sorted pair."""
    return min(tuple(sorted(e)) for e in circuit_edges(circuit))


# ---------------------------------------------------------------------------
# split


def split_by_circuit(T: Triangulation, circuit, base_edge=None) -> HamiltonSplit:
    """Cut ``T`` along a Hamilton circuit into two polygons on ``base_edge``.

    The inner polygon is the side whose triples already run along the
    circuit; the outer side is mirrored (triples reversed) so that both share
    the perimeter.  Polygon triangles keep their index in ``T`` as origin.
    """
    circuit = [int(x) for x in circuit]
    if not is_hamilton_circuit(T, circuit):
        raise NotHamiltonian(f"{circuit} is not a Hamilton circuit")
    n = len(circuit)
    if base_edge is None:
        base_edge = default_base(circuit)
    a, b = base_edge
    pos = {u: i for i, u in enumerate(circuit)}
    if a not in pos or b not in pos or (pos[b] - pos[a]) % n not in (1, n - 1):
        raise EdgeNotOnCircuit(f"{a}-{b} is not a circuit edge")
    if (pos[b] - pos[a]) % n == 1:
        a, b = b, a
    # now b -> a runs forward along the circuit; rotate so perimeter ends at b
    k = pos[a]
    perim = circuit[k:] + circuit[:k]
    fwd = set()
    cut = set()
    for i in range(n):
        x, y = perim[i], perim[(i + 1) % n]
        ds = T.dart_between(x, y)
        rs = T.dart_between(y, x)
        if len(ds) != 1 or len(rs) != 1:
            raise NotHamiltonian(f"circuit edge {x}-{y} is a multi-edge")
        fwd.add(ds[0])
        cut.update((ds[0], rs[0]))
    sides = T.dual_components(cut)
    if len(sides) != 2:
        raise NotHamiltonian("circuit does not split the sphere")
    first = next(d for d in fwd)
    inner_side = sides[0] if first // 3 in sides[0] else sides[1]
    outer_side = sides[1] if inner_side is sides[0] else sides[0]
    inner = _side_polygon(T, perim, inner_side, cut, mirror=False)
    outer = _side_polygon(T, perim, outer_side, cut, mirror=True)
    return HamiltonSplit(tuple(perim), (perim[0], perim[-1]), inner, outer)


def _side_polygon(T, perim, side, cut, mirror) -> PolygonTriangulation:
    local = {i: n for n, i in enumerate(side)}
    tris = []
    twin = []
    for i in side:
        tri = T.triangles[i]
        tris.append(reverse_triple(tri) if mirror else tri)
    twin = [-1] * (3 * len(side))
    for i in side:
        for k in range(3):
            d = 3 * i + k
            if d in cut:
                continue
            o = T.twin[d]
            nd = 3 * local[i] + k
            no = 3 * local[o // 3] + o % 3
            if mirror:
                nd, no = reversed_dart(nd), reversed_dart(no)
            twin[nd] = no
    poly = PolygonTriangulation(perim, tris, twin, origin=tuple(side))
    poly.boundary_darts  # validates the perimeter
    return poly


# ---------------------------------------------------------------------------
# reconstruction


def reconstruction_order(inner: PolygonTriangulation, base=None) -> list[tuple[int, int]]:
    """``(ear triangle, tip)`` pairs in the order ears are cut off ``inner``."""
    if inner.v_p < 3:
        raise DegeneratePolygon("nothing to cut")
    assoc = associate(inner, base)
    return [(tri, tip) for tip, tri, _ in assoc.steps]


def rebuild(outer: PolygonTriangulation, inner: PolygonTriangulation, steps=None):
    """Add the inner polygon's ears to the outer one, one tip at a time.

    Returns the list of intermediate states; the last is the degenerate
    polygon on the two base vertices.  Added triangles carry the inner
    triangle's origin.
    """
    if steps is None:
        steps = reconstruction_order(inner)
    state = outer
    states = [state]
    for tri, tip in steps:
        org = inner.origin[tri] if inner.origin is not None else None
        state = add_ear(state, tip, origin=org)
        states.append(state)
    return states


def degenerate_polygon(split: HamiltonSplit) -> PolygonTriangulation:
    return rebuild(split.outer, split.inner)[-1]
