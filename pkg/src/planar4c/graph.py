"""Maximal planar triangulations and triangulated polygons.

Both are stored as lists of oriented vertex triples glued along *darts*.  Dart
``3*i + k`` is the directed edge ``tri[k] -> tri[(k+1) % 3]`` of triangle
``i``; ``twin[d]`` is the dart on the other side of the same edge, or ``-1`` on
a polygon perimeter.  Keying edges by dart rather than by endpoint pair keeps
parallel edges apart, which the degenerate two-vertex polygon and polygon pairs
with shared diagonals need.

Every complex uses one global sense: the stored triple order is read as the
clockwise direction when relating orientations to edge colors.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    InconsistentOrientation,
    InvalidPolygon,
    NotATriangulation,
    NotSeparating,
    PerimeterMismatch,
    UnknownVertex,
)

Triple = tuple[int, int, int]

_MAX_PAIRINGS = 100_000


def next_dart(d: int) -> int:
    return 3 * (d // 3) + (d % 3 + 1) % 3


def prev_dart(d: int) -> int:
    return 3 * (d // 3) + (d % 3 + 2) % 3


def reverse_triple(tri: Sequence[int]) -> Triple:
    a, b, c = tri
    return (a, c, b)


def reversed_dart(d: int) -> int:
    """Dart index of the same edge after its triangle is reversed."""
    return 3 * (d // 3) + (2 - d % 3)


class TriangleComplex:
    """Oriented triangles plus a dart pairing.  Immutable."""

    def __init__(self, triangles: Iterable[Sequence[int]], twin: Sequence[int]):
        self.triangles: tuple[Triple, ...] = tuple(
            (int(a), int(b), int(c)) for a, b, c in triangles
        )
        self.twin: tuple[int, ...] = tuple(int(x) for x in twin)
        if len(self.twin) != 3 * len(self.triangles):
            raise ValueError("twin table must hold one entry per dart")

    # -- darts ---------------------------------------------------------
    @property
    def t(self) -> int:
        return len(self.triangles)

    def tail(self, d: int) -> int:
        return self.triangles[d // 3][d % 3]

    def head(self, d: int) -> int:
        return self.triangles[d // 3][(d % 3 + 1) % 3]

    def rotate(self, d: int) -> int:
        """Next dart leaving the same vertex, or -1 at a border."""
        p = self.twin[prev_dart(d)]
        return p

    # -- edges ---------------------------------------------------------
    @cached_property
    def _edge_tables(self):
        edge_of = [-1] * (3 * self.t)
        darts: list[tuple[int, int]] = []
        for d in range(3 * self.t):
            if edge_of[d] >= 0:
                continue
            edge_of[d] = len(darts)
            o = self.twin[d]
            if o >= 0:
                edge_of[o] = len(darts)
            darts.append((d, o))
        return tuple(edge_of), tuple(darts)

    @property
    def edge_of(self) -> tuple[int, ...]:
        return self._edge_tables[0]

    @property
    def edge_darts(self) -> tuple[tuple[int, int], ...]:
        return self._edge_tables[1]

    @property
    def e(self) -> int:
        return len(self.edge_darts)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Endpoints of each edge id, as read from its first dart."""
        return tuple((self.tail(d), self.head(d)) for d, _ in self.edge_darts)

    def triangle_edges(self, i: int) -> tuple[int, int, int]:
        return tuple(self.edge_of[3 * i + k] for k in range(3))

    # -- vertices ------------------------------------------------------
    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({u for tri in self.triangles for u in tri}))

    @cached_property
    def incident(self) -> dict[int, tuple[int, ...]]:
        inc: dict[int, list[int]] = defaultdict(list)
        for i, tri in enumerate(self.triangles):
            for u in tri:
                inc[u].append(i)
        return {u: tuple(v) for u, v in inc.items()}

    def triangle_degree(self, u: int) -> int:
        if u not in self.incident:
            raise UnknownVertex(u)
        return len(self.incident[u])

    @cached_property
    def neighbors(self) -> dict[int, frozenset[int]]:
        nb: dict[int, set[int]] = defaultdict(set)
        for a, b in self.edges:
            nb[a].add(b)
            nb[b].add(a)
        return {u: frozenset(nb[u]) for u in self.vertices}

    @cached_property
    def edge_multiplicity(self) -> Counter:
        return Counter(frozenset(p) for p in self.edges)

    @property
    def has_multi_edges(self) -> bool:
        return any(m > 1 for m in self.edge_multiplicity.values())

    def local_index(self) -> dict[int, int]:
        return {u: i for i, u in enumerate(self.vertices)}

    def incidence_array(self) -> np.ndarray:
        """``(t, 3)`` int64 array of dense local vertex indices."""
        idx = self.local_index()
        return np.array(
            [[idx[u] for u in tri] for tri in self.triangles], dtype=np.int64
        ).reshape(self.t, 3)

    def fans(self) -> dict[int, list[list[int]]]:
        """Maximal dart sequences around each vertex, following ``rotate``."""
        seen = [False] * (3 * self.t)
        out: dict[int, list[list[int]]] = defaultdict(list)
        for d0 in range(3 * self.t):
            if seen[d0]:
                continue
            # walk back to the start of an open fan, if any
            d = d0
            while True:
                tw = self.twin[d]
                if tw < 0:
                    break
                back = next_dart(tw)
                if back == d0:
                    break
                d = back
            fan = []
            while d >= 0 and not seen[d]:
                seen[d] = True
                fan.append(d)
                d = self.rotate(d)
            out[self.tail(fan[0])].append(fan)
        return dict(out)

    def dual_components(self, blocked: set[int] = frozenset()) -> list[list[int]]:
        """Triangle components when crossing the darts in ``blocked`` is forbidden."""
        comp = [-1] * self.t
        parts: list[list[int]] = []
        for s in range(self.t):
            if comp[s] >= 0:
                continue
            comp[s] = len(parts)
            part = [s]
            queue = deque([s])
            while queue:
                i = queue.popleft()
                for k in range(3):
                    d = 3 * i + k
                    o = self.twin[d]
                    if o < 0 or d in blocked:
                        continue
                    j = o // 3
                    if comp[j] < 0:
                        comp[j] = len(parts)
                        part.append(j)
                        queue.append(j)
            parts.append(sorted(part))
        return parts

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.triangles == other.triangles
            and self.twin == other.twin
            and self._key() == other._key()
        )

    def __hash__(self):
        return hash((self.triangles, self.twin, self._key()))

    def _key(self):
        return ()


# ---------------------------------------------------------------------------
# dart pairing


def _orient_simple(triples: list[Triple], anchor: int, anchor_dir=None) -> list[Triple]:
    """Flip triples so that every edge is traversed once in each direction.

    Only valid when each unordered vertex pair bounds at most two triples.
    ``anchor_dir`` is an optional directed edge that triangle ``anchor`` must
    contain.
    """
    by_pair: dict[frozenset, list[int]] = defaultdict(list)
    for i, (a, b, c) in enumerate(triples):
        for x, y in ((a, b), (b, c), (c, a)):
            by_pair[frozenset((x, y))].append(i)
    out: list[Triple | None] = [None] * len(triples)
    first = tuple(triples[anchor])
    if anchor_dir is not None and not _has_dart(first, *anchor_dir):
        first = reverse_triple(first)
    order = [anchor] + [i for i in range(len(triples)) if i != anchor]
    for root in order:
        if out[root] is not None:
            continue
        out[root] = first if root == anchor else tuple(triples[root])
        queue = deque([root])
        while queue:
            i = queue.popleft()
            a, b, c = out[i]
            for x, y in ((a, b), (b, c), (c, a)):
                for j in by_pair[frozenset((x, y))]:
                    if j == i:
                        continue
                    want = triples[j] if _has_dart(triples[j], y, x) else reverse_triple(triples[j])
                    if out[j] is None:
                        out[j] = tuple(want)
                        queue.append(j)
                    elif not _has_dart(out[j], y, x):
                        raise InconsistentOrientation(
                            f"triangles {i} and {j} cannot be oriented consistently"
                        )
    return [tuple(x) for x in out]


def _has_dart(tri, x, y) -> bool:
    a, b, c = tri
    return (x, y) in ((a, b), (b, c), (c, a))


def _pairings(triples: Sequence[Triple], boundary: Counter):
    """Yield every twin table matching darts ``a->b`` with ``b->a``.

    ``boundary`` counts directed edges that stay unpaired (perimeter darts).
    """
    groups: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i, tri in enumerate(triples):
        for k in range(3):
            groups[(tri[k], tri[(k + 1) % 3])].append(3 * i + k)
    twin = [-1] * (3 * len(triples))
    choices = []
    done = set()
    for (a, b), fwd in groups.items():
        if (a, b) in done:
            continue
        done.add((a, b))
        done.add((b, a))
        bwd = groups.get((b, a), [])
        nf = len(fwd) - boundary.get((a, b), 0)
        nb = len(bwd) - boundary.get((b, a), 0)
        if nf != nb or nf < 0:
            raise NotATriangulation(f"edge {a}-{b} is not bordered by exactly two faces")
        if len(fwd) == 1 and len(bwd) == 1 and nf == 1:
            twin[fwd[0]], twin[bwd[0]] = bwd[0], fwd[0]
            continue
        if nf == 0:
            continue
        options = []
        for fsel in itertools.combinations(fwd, nf):
            for bsel in itertools.permutations(bwd, nf):
                options.append(tuple(zip(fsel, bsel)))
        choices.append(options)
    total = 1
    for opt in choices:
        total *= len(opt)
        if total > _MAX_PAIRINGS:
            raise NotATriangulation("too many parallel edges to infer the embedding")
    for combo in itertools.product(*choices):
        tw = list(twin)
        for pairs in combo:
            for x, y in pairs:
                tw[x], tw[y] = y, x
        yield tw


def _is_sphere(cx: TriangleComplex) -> bool:
    if any(x < 0 for x in cx.twin):
        return False
    fans = cx.fans()
    if any(len(fans.get(u, ())) != 1 for u in cx.vertices):
        return False
    if len(cx.dual_components()) != 1:
        return False
    return len(cx.vertices) - cx.e + cx.t == 2


def _is_disk(cx: TriangleComplex) -> bool:
    fans = cx.fans()
    if any(len(fans.get(u, ())) != 1 for u in cx.vertices):
        return False
    if len(cx.dual_components()) != 1:
        return False
    return len(cx.vertices) - cx.e + cx.t == 1


# ---------------------------------------------------------------------------
# closed triangulations


class Triangulation(TriangleComplex):
    """A maximal planar (multi)graph: every face, the outer one included, a triangle.

    ``labels`` maps dense vertex ids to caller-facing names for reporting.
    """

    def __init__(self, v: int, triangles, twin, labels=None):
        super().__init__(triangles, twin)
        self.v = int(v)
        self.labels = tuple(labels) if labels is not None else tuple(range(self.v))

    def _key(self):
        return (self.v,)

    def __repr__(self):
        return f"Triangulation(v={self.v}, t={self.t}, e={self.e})"

    def relabeled(self, labels) -> "Triangulation":
        return Triangulation(self.v, self.triangles, self.twin, labels)

    def face_of(self, a: int, b: int, c: int) -> int | None:
        key = frozenset((a, b, c))
        for i, tri in enumerate(self.triangles):
            if frozenset(tri) == key:
                return i
        return None

    def dart_between(self, a: int, b: int) -> list[int]:
        return [d for d in range(3 * self.t) if self.tail(d) == a and self.head(d) == b]


def build_triangulation(triples, twin=None, labels=None) -> Triangulation:
    """Validate oriented triples and return a :class:`Triangulation`.

    Triples of a simple graph may come in any orientation; they are flipped
    to agree with the first triple.  Multigraph input must already be
    consistently oriented, and without an explicit ``twin`` table the pairing
    of parallel darts is searched for.
    """
    triples = [tuple(int(x) for x in tri) for tri in triples]
    if not triples:
        raise NotATriangulation("no triangles given")
    for tri in triples:
        if len(tri) != 3 or len(set(tri)) != 3:
            raise NotATriangulation(f"degenerate triangle {tri}")
    verts = sorted({u for tri in triples for u in tri})
    v = len(verts)
    if verts != list(range(v)):
        raise NotATriangulation("vertex ids must be dense in [0, v)")
    if len(triples) != 2 * (v - 2):
        raise NotATriangulation(f"{len(triples)} triangles, expected 2(v-2)={2 * (v - 2)}")
    if twin is not None:
        cx = Triangulation(v, triples, twin, labels)
        _check_twin(cx)
        if not _is_sphere(cx):
            raise NotATriangulation("dart pairing does not describe a sphere")
        return cx
    pair_count = Counter(
        frozenset((tri[k], tri[(k + 1) % 3])) for tri in triples for k in range(3)
    )
    if all(c == 2 for c in pair_count.values()):
        triples = _orient_simple(triples, 0)
    elif any(c % 2 for c in pair_count.values()):
        raise NotATriangulation("some edge borders an odd number of faces")
    else:
        dirs = Counter((tri[k], tri[(k + 1) % 3]) for tri in triples for k in range(3))
        if any(dirs[(a, b)] != dirs[(b, a)] for a, b in dirs):
            raise InconsistentOrientation("directed edges do not pair up")
    for tw in _pairings(triples, Counter()):
        cx = Triangulation(v, triples, tw, labels)
        if _is_sphere(cx):
            return cx
    raise NotATriangulation("triples do not close up into a sphere")


def _check_twin(cx: TriangleComplex) -> None:
    for d, o in enumerate(cx.twin):
        if o < 0:
            continue
        if cx.twin[o] != d or o == d:
            raise NotATriangulation("twin table is not an involution")
        if cx.tail(o) != cx.head(d) or cx.head(o) != cx.tail(d):
            raise InconsistentOrientation(f"dart {d} paired with a same-direction dart")


# ---------------------------------------------------------------------------
# polygons


class PolygonTriangulation(TriangleComplex):
    """A triangulated disk whose border is ``perimeter``.

    The perimeter is stored so that the base is its closing edge
    ``perimeter[-1] -> perimeter[0]``; triangle darts run along the perimeter
    in list order.  With two perimeter vertices the border is a doubled base
    edge.  ``origin`` optionally records, per triangle, the index of the
    triangle it came from in a parent triangulation.
    """

    def __init__(self, perimeter, triangles, twin, origin=None):
        super().__init__(triangles, twin)
        self.perimeter: tuple[int, ...] = tuple(int(x) for x in perimeter)
        self.origin = tuple(origin) if origin is not None else None

    def _key(self):
        return (self.perimeter,)

    def __repr__(self):
        return f"PolygonTriangulation(v_p={self.v_p}, v_i={self.v_i}, t={self.t})"

    @property
    def base(self) -> tuple[int, int]:
        return (self.perimeter[0], self.perimeter[-1])

    @property
    def v_p(self) -> int:
        return len(self.perimeter)

    @cached_property
    def inner_vertices(self) -> tuple[int, ...]:
        on = set(self.perimeter)
        return tuple(u for u in self.vertices if u not in on)

    @property
    def v_i(self) -> int:
        return len(self.inner_vertices)

    @property
    def non_base(self) -> tuple[int, ...]:
        return self.perimeter[1:-1]

    @cached_property
    def boundary_darts(self) -> tuple[int, ...]:
        """Border dart for perimeter edge ``i`` (``p_i -> p_{i+1}``), base last."""
        free = [d for d in range(3 * self.t) if self.twin[d] < 0]
        n = self.v_p
        out = []
        for i in range(n):
            a, b = self.perimeter[i], self.perimeter[(i + 1) % n]
            cand = [d for d in free if self.tail(d) == a and self.head(d) == b and d not in out]
            if not cand:
                raise InvalidPolygon(f"perimeter edge {a}->{b} missing")
            out.append(cand[0])
        return tuple(out)

    @cached_property
    def perimeter_edges(self) -> tuple[int, ...]:
        return tuple(self.edge_of[d] for d in self.boundary_darts)

    @cached_property
    def diagonals(self) -> tuple[tuple[int, int], ...]:
        """Interior edges as sorted endpoint pairs (with multiplicity)."""
        border = set(self.perimeter_edges)
        return tuple(
            sorted(tuple(sorted(p)) for i, p in enumerate(self.edges) if i not in border)
        )

    def perimeter_neighbors(self, u: int) -> tuple[int, int]:
        i = self.perimeter.index(u)
        n = self.v_p
        return self.perimeter[(i - 1) % n], self.perimeter[(i + 1) % n]


def _rotate_to_base(perimeter, base) -> list[int]:
    perimeter = [int(x) for x in perimeter]
    n = len(perimeter)
    a, b = (int(x) for x in base)
    for i in range(n):
        x, y = perimeter[i], perimeter[(i + 1) % n]
        if {x, y} == {a, b}:
            return perimeter[i + 1 :] + perimeter[: i + 1]
    raise InvalidPolygon(f"base {a}-{b} is not a perimeter edge")


def polygon_from_diagonals(perimeter, diagonals=(), base=None) -> PolygonTriangulation:
    """Triangulated polygon without inner vertices from its chord set."""
    perimeter = [int(x) for x in perimeter]
    if base is not None:
        perimeter = _rotate_to_base(perimeter, base)
    n = len(perimeter)
    if len(set(perimeter)) != n or n < 2:
        raise InvalidPolygon("perimeter must list at least two distinct vertices")
    if n == 2:
        if diagonals:
            raise InvalidPolygon("a two-vertex polygon has no diagonals")
        return PolygonTriangulation(perimeter, (), ())
    pos = {u: i for i, u in enumerate(perimeter)}
    chords = set()
    for a, b in diagonals:
        if a not in pos or b not in pos:
            raise InvalidPolygon(f"diagonal {a}-{b} leaves the perimeter")
        i, j = sorted((pos[a], pos[b]))
        if j - i < 2 or (i == 0 and j == n - 1):
            raise InvalidPolygon(f"{a}-{b} is a perimeter edge, not a diagonal")
        chords.add((i, j))
    if len(chords) != n - 3:
        raise InvalidPolygon(f"need {n - 3} diagonals, got {len(chords)}")
    adj = {(i, i + 1) for i in range(n - 1)} | {(0, n - 1)} | chords
    tris: list[Triple] = []

    def split(i, j):
        if j - i < 2:
            return
        apex = [k for k in range(i + 1, j) if (i, k) in adj and (k, j) in adj]
        if len(apex) != 1:
            raise InvalidPolygon("diagonals cross or leave a non-triangular face")
        k = apex[0]
        tris.append((perimeter[i], perimeter[k], perimeter[j]))
        split(i, k)
        split(k, j)

    split(0, n - 1)
    if len(tris) != n - 2:
        raise InvalidPolygon("diagonals do not triangulate the polygon")
    return _polygon_from_oriented(perimeter, tris)


def _polygon_from_oriented(perimeter, tris, origin=None) -> PolygonTriangulation:
    n = len(perimeter)
    boundary = Counter((perimeter[i], perimeter[(i + 1) % n]) for i in range(n))
    for tw in _pairings(tris, boundary):
        poly = PolygonTriangulation(perimeter, tris, tw, origin)
        try:
            poly.boundary_darts
        except InvalidPolygon:
            continue
        if sum(1 for x in tw if x < 0) == n and _is_disk(poly):
            return poly
    raise InvalidPolygon("triangles do not form a disk bounded by the perimeter")


def build_polygon(perimeter, triangles, base=None, twin=None) -> PolygonTriangulation:
    """Polygon, possibly with inner vertices, from its triangles.

    Triangles are re-oriented to run along the perimeter when every interior
    edge is simple; otherwise they must already be oriented that way.
    """
    perimeter = [int(x) for x in perimeter]
    if base is not None:
        perimeter = _rotate_to_base(perimeter, base)
    tris = [tuple(int(x) for x in tri) for tri in triangles]
    n = len(perimeter)
    if twin is not None:
        poly = PolygonTriangulation(perimeter, tris, twin)
        _check_twin(poly)
        poly.boundary_darts
        if not _is_disk(poly):
            raise InvalidPolygon("dart pairing does not describe a disk")
        return poly
    counts = Counter(frozenset((t[k], t[(k + 1) % 3])) for t in tris for k in range(3))
    if n >= 3 and all(c <= 2 for c in counts.values()):
        anchor_edge = (perimeter[-1], perimeter[0])
        anchors = [i for i, t in enumerate(tris) if set(anchor_edge) <= set(t)]
        if not anchors:
            raise InvalidPolygon("no triangle on the base edge")
        tris = _orient_simple(tris, anchors[0], anchor_edge)
    return _polygon_from_oriented(perimeter, tris)


def wheel_polygon(n: int, center: int | None = None) -> PolygonTriangulation:
    """An ``n``-gon with one inner vertex joined to every perimeter vertex."""
    c = n if center is None else center
    tris = [(i, (i + 1) % n, c) for i in range(n)]
    return build_polygon(range(n), tris)


# ---------------------------------------------------------------------------
# separating triangles


@dataclass(frozen=True, order=True)
class SeparatingTriangle:
    vertices: tuple[int, int, int]
    edges: tuple[int, int, int]


def find_separating_triangles(T: Triangulation) -> list[SeparatingTriangle]:
    """All 3-cycles of edges that do not bound a face."""
    facial = {frozenset(T.triangle_edges(i)) for i in range(T.t)}
    between: dict[tuple[int, int], list[int]] = defaultdict(list)
    for eid, (a, b) in enumerate(T.edges):
        between[(min(a, b), max(a, b))].append(eid)
    out = []
    nb = T.neighbors
    for a in T.vertices:
        for b in sorted(x for x in nb[a] if x > a):
            for c in sorted(x for x in nb[b] if x > b and x in nb[a]):
                for eab, ebc, eac in itertools.product(
                    between[(a, b)], between[(b, c)], between[(a, c)]
                ):
                    if frozenset((eab, ebc, eac)) not in facial:
                        out.append(SeparatingTriangle((a, b, c), (eab, ebc, eac)))
    return out


def _cycle_darts(T: TriangleComplex, edges) -> set[int]:
    out = set()
    for eid in edges:
        d, o = T.edge_darts[eid]
        out.add(d)
        out.add(o)
    return out


def _close_side(T: TriangleComplex, side: list[int], cut: set[int]):
    """Triangles of ``side`` plus one triangle sealing its three border darts."""
    in_side = set(side)
    border = [d for d in cut if d // 3 in in_side]
    seal = {T.head(d): T.tail(d) for d in border}  # reversed border darts
    if len(border) != 3 or len(seal) != 3:
        raise NotSeparating("cycle does not bound the side cleanly")
    start = min(seal)
    tri = [start, seal[start], seal[seal[start]]]
    if seal[tri[2]] != start:
        raise NotSeparating("cycle does not bound the side cleanly")
    tris = [T.triangles[i] for i in side] + [tuple(tri)]
    local = {i: n for n, i in enumerate(side)}
    s = len(side)
    twin = []
    for i in side:
        for k in range(3):
            d = 3 * i + k
            if d in cut:
                x, y = T.tail(d), T.head(d)
                kk = [q for q in range(3) if tri[q] == y and tri[(q + 1) % 3] == x][0]
                twin.append(3 * s + kk)
            else:
                o = T.twin[d]
                twin.append(3 * local[o // 3] + o % 3)
    for q in range(3):
        x, y = tri[q], tri[(q + 1) % 3]
        d = [d for d in border if T.tail(d) == y and T.head(d) == x][0]
        twin.append(3 * local[d // 3] + d % 3)
    return tris, twin


def _relabel_dense(tris, twin) -> Triangulation:
    verts = sorted({u for t in tris for u in t})
    idx = {u: i for i, u in enumerate(verts)}
    new = [tuple(idx[u] for u in t) for t in tris]
    return Triangulation(len(verts), new, twin, verts)


def split_off_separating_triangle(T: Triangulation, s: SeparatingTriangle):
    """Cut ``T`` along ``s``; return ``(parent, child)``.

    Both parts get ``s`` back as an ordinary face (the last triangle).  The
    parent is the side holding the smallest vertex id off the cycle.  Part
    labels are vertex ids of ``T``.
    """
    cut = _cycle_darts(T, s.edges)
    sides = T.dual_components(cut)
    if len(sides) != 2:
        raise NotSeparating(f"{s.vertices} does not split the sphere in two")
    ring = set(s.vertices)
    off = [{u for i in side for u in T.triangles[i]} - ring for side in sides]
    if not off[0] or not off[1]:
        raise NotSeparating(f"{s.vertices} bounds a face")
    low = min(off[0] | off[1])
    p = 0 if low in off[0] else 1
    parts = []
    for side in (sides[p], sides[1 - p]):
        tris, twin = _close_side(T, side, cut)
        part = _relabel_dense(tris, twin)
        if not _is_sphere(part):
            raise NotSeparating("cut produced an invalid part")
        parts.append(part)
    return parts[0], parts[1]


# ---------------------------------------------------------------------------
# polygon pairs


def combine_polygons(inner: PolygonTriangulation, outer: PolygonTriangulation) -> Triangulation:
    """Glue two polygons along their shared perimeter.

    The outer polygon is mirrored: its triples are reversed on the way in.
    Shared diagonals become parallel edges.
    """
    if inner.perimeter != outer.perimeter:
        raise PerimeterMismatch(f"{inner.perimeter} vs {outer.perimeter}")
    if inner.v_i or outer.v_i:
        raise InvalidPolygon("polygons with inner vertices cannot be combined")
    if inner.v_p < 3:
        raise InvalidPolygon("need at least three perimeter vertices")
    ti = inner.t
    tris = list(inner.triangles) + [reverse_triple(t) for t in outer.triangles]
    twin = list(inner.twin) + [-1] * (3 * outer.t)
    for d, o in enumerate(outer.twin):
        if o >= 0:
            twin[3 * ti + reversed_dart(d)] = 3 * ti + reversed_dart(o)
    for di, do in zip(inner.boundary_darts, outer.boundary_darts):
        nd = 3 * ti + reversed_dart(do)
        twin[di], twin[nd] = nd, di
    T = _relabel_dense(tris, twin)
    if not _is_sphere(T):
        raise PerimeterMismatch("polygons do not close into a sphere")
    return T


# ---------------------------------------------------------------------------
# canonical form


def canonical_code(T: TriangleComplex) -> tuple[int, ...]:
    """Smallest BFS rotation code over all root darts and both mirror senses.

    Equal codes means the two closed triangulations are the same map up to
    relabeling and reflection.
    """
    best = None
    n = 3 * T.t
    for mirror in (False, True):
        for d0 in range(n):
            code = _bfs_code(T, d0, mirror, best)
            if code is not None and (best is None or code < best):
                best = code
    return (len(T.vertices),) + tuple(best)


def _bfs_code(T: TriangleComplex, d0: int, mirror: bool, bound):
    label = {T.tail(d0): 0}
    queue = deque([d0])
    code: list[int] = []
    tied = bound is not None
    while queue:
        start = queue.popleft()
        d = start
        while True:
            w = T.head(d)
            if w not in label:
                label[w] = len(label)
                queue.append(T.twin[d])
            code.append(label[w])
            d = next_dart(T.twin[d]) if mirror else T.rotate(d)
            if d == start:
                code.append(-1)
            if tied:
                c, b = code[-1], bound[len(code) - 1]
                if c > b:
                    return None
                tied = c == b
            if d == start:
                break
    return code
