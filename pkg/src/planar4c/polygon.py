"""Ears, the vertex/triangle association, decoding, enumeration and ear addition."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import _kernels
from .errors import (
    DegeneratePolygon,
    IncompleteAssignment,
    NoPreimage,
    NotOnPerimeter,
    TipOnBase,
    TooLarge,
)
from .graph import PolygonTriangulation, _polygon_from_oriented, _rotate_to_base
from .schemes import OrientationAssignment, VertexNumbering

DEFAULT_MAX_TRIANGLES = 22


@dataclass(frozen=True)
class EarInfo:
    triangle: int
    tip: int
    perimeter_edges: tuple[int, int]


@dataclass(frozen=True)
class Association:
    """Non-base vertex <-> triangle bijection from cutting ears toward the base.

    ``steps`` lists ``(tip, triangle, (x, y))`` in cut order, where ``x, y``
    are the two other corners of the cut ear.
    """

    base: tuple[int, int]
    vertex_triangle: dict
    steps: tuple

    @property
    def triangle_vertex(self) -> dict:
        return {tri: u for u, tri in self.vertex_triangle.items()}

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self.steps)


@dataclass(frozen=True)
class X1X2Code:
    """Per non-base vertex, the orientation of its vertex-triangle."""

    symbols: tuple[tuple[int, int], ...]

    def __str__(self):
        return " ".join(f"{u}:{s}" for u, s in self.symbols)

    def flipped(self) -> "X1X2Code":
        return X1X2Code(tuple((u, 3 - s) for u, s in self.symbols))


@dataclass
class Outcome:
    """Result of checking a property over a finite table."""

    holds: bool
    checked: int
    violation: dict | None = None
    details: dict = field(default_factory=dict)


def with_base(P: PolygonTriangulation, base=None) -> PolygonTriangulation:
    """The same polygon re-rooted on another perimeter edge."""
    if base is None or set(base) == set(P.base):
        return P
    perim = _rotate_to_base(P.perimeter, base)
    return PolygonTriangulation(perim, P.triangles, P.twin, P.origin)


def _require_plain(P: PolygonTriangulation) -> None:
    if P.v_p < 3:
        raise DegeneratePolygon("polygon has fewer than three perimeter vertices")
    if P.v_i:
        raise DegeneratePolygon("polygon has inner vertices")


def find_ears(P: PolygonTriangulation) -> list[EarInfo]:
    """One entry per perimeter vertex of triangle degree 1, in perimeter order."""
    _require_plain(P)
    n = P.v_p
    pe = P.perimeter_edges
    out = []
    for i, u in enumerate(P.perimeter):
        if P.triangle_degree(u) == 1:
            out.append(EarInfo(P.incident[u][0], u, (pe[(i - 1) % n], pe[i])))
    return out


def associate(P: PolygonTriangulation, base=None) -> Association:
    """Cut non-base ears, lowest perimeter position first, down to the base."""
    P = with_base(P, base)
    _require_plain(P)
    return _associate(P)


def _associate(P: PolygonTriangulation) -> Association:
    base = set(P.base)
    pos = {u: i for i, u in enumerate(P.perimeter)}
    alive = [True] * P.t
    deg = {u: len(P.incident[u]) for u in P.vertices}
    remaining = set(P.non_base)
    steps = []
    while remaining:
        tips = [u for u in remaining if deg[u] == 1]
        if not tips:
            raise DegeneratePolygon("no non-base ear tip left")
        tip = min(tips, key=pos.__getitem__)
        tri = next(i for i in P.incident[tip] if alive[i])
        alive[tri] = False
        others = tuple(x for x in P.triangles[tri] if x != tip)
        for x in P.triangles[tri]:
            deg[x] -= 1
        remaining.discard(tip)
        steps.append((tip, tri, others))
    assert not base & {s[0] for s in steps}
    return Association(
        (P.perimeter[0], P.perimeter[-1]),
        {s[0]: s[1] for s in steps},
        tuple(steps),
    )


def decode_cv3_to_ct2(
    P: PolygonTriangulation, numbering, base=None
) -> OrientationAssignment:
    """The unique orientation assignment producing ``numbering`` on the
    non-base vertices, by iterated ear cutting."""
    P = with_base(P, base)
    _require_plain(P)
    vals = numbering.values if isinstance(numbering, VertexNumbering) else dict(numbering)
    return _decode(P, _associate(P), vals)


def _decode(P, assoc: Association, vals) -> OrientationAssignment:
    try:
        cur = {u: vals[u] % 3 for u in P.non_base}
    except KeyError as exc:
        raise IncompleteAssignment(f"no value for vertex {exc.args[0]}") from None
    out = [0] * P.t
    for tip, tri, others in assoc.steps:
        x = cur[tip]
        if x == 0:
            raise NoPreimage(f"ear tip {tip} has adjusted value 0")
        out[tri] = x
        for y in others:
            if y in cur:
                cur[y] = (cur[y] - x) % 3
    return OrientationAssignment(tuple(out))


# ---------------------------------------------------------------------------
# enumeration


def enumerate_polygons_on_base(v: int) -> Iterator[PolygonTriangulation]:
    """Every triangulated ``v``-gon on a fixed base, each exactly once.

    Grows a genealogical tree: each polygon remembers the perimeter edge of
    its last added ear, and a child adds one ear on that edge or on any edge
    further from the base start.  Perimeter vertices come out numbered
    ``0..v-1`` with the base ``v-1 -> 0``.
    """
    if v < 2:
        raise ValueError("need v >= 2")
    if v == 2:
        yield PolygonTriangulation((0, 1), (), ())
        return
    # path runs from base start (label 0) to base end (label 1)
    stack = [([0, 2, 1], [(0, 2, 1)], 0)]
    while stack:
        path, tris, j = stack.pop()
        if len(path) == v:
            yield _finish(path, tris)
            continue
        new = len(path)
        children = []
        for k in range(j, len(path) - 1):
            a, b = path[k], path[k + 1]
            children.append((path[: k + 1] + [new] + path[k + 1 :], tris + [(a, new, b)], k))
        stack.extend(reversed(children))


def _finish(path, tris) -> PolygonTriangulation:
    idx = {u: i for i, u in enumerate(path)}
    tri2 = [tuple(idx[u] for u in t) for t in tris]
    return _polygon_from_oriented(list(range(len(path))), tri2)


@lru_cache(maxsize=None)
def catalan_count(v: int) -> int:
    """Number of triangulations of a ``v``-gon on a base: Catalan(v-2)."""
    if v < 2:
        raise ValueError("need v >= 2")
    n = v - 2
    c = [1]
    for m in range(n):
        c.append(sum(c[i] * c[m - i] for i in range(m + 1)))
    return c[n]


# ---------------------------------------------------------------------------
# X1-X2 codes and oriented pairs


def x1x2_code(P: PolygonTriangulation, a: OrientationAssignment, base=None) -> X1X2Code:
    P = with_base(P, base)
    assoc = associate(P)
    return X1X2Code(tuple((u, a.values[assoc.vertex_triangle[u]]) for u in P.non_base))


def assignment_from_code(P: PolygonTriangulation, code: X1X2Code, base=None) -> OrientationAssignment:
    P = with_base(P, base)
    assoc = associate(P)
    vals = [0] * P.t
    for u, s in code.symbols:
        vals[assoc.vertex_triangle[u]] = s
    return OrientationAssignment(tuple(vals))


def code_table(P: PolygonTriangulation, base=None) -> np.ndarray:
    """Numbering of the non-base vertices for every X1-X2 code.

    Row ``m`` belongs to the code whose ``j``-th non-base vertex has symbol
    2 exactly when bit ``j`` of ``m`` is set.
    """
    P = with_base(P, base)
    assoc = associate(P)
    order = [assoc.vertex_triangle[u] for u in P.non_base]
    idx = P.local_index()
    inc = np.array([[idx[x] for x in P.triangles[i]] for i in order], dtype=np.int64)
    sel = [idx[u] for u in P.non_base]
    codes = _kernels.cv3_codes(inc, len(idx), _kernels.digit_weights(len(idx), sel))
    return decode_codes(codes, len(sel))


def decode_codes(codes: np.ndarray, width: int) -> np.ndarray:
    """Split base-3 codes into a ``(len(codes), width)`` digit array."""
    out = np.empty((codes.shape[0], width), dtype=np.int64)
    rest = codes.copy()
    for j in range(width):
        out[:, j] = rest % 3
        rest //= 3
    return out


def verify_difference_property(P: PolygonTriangulation, base=None, shifts=None) -> Outcome:
    """Flip one vertex-triangle, keep every other code symbol: the numbering
    at its triangle-vertex must change.

    ``shifts`` maps vertices to constants added (mod 3) to their whole column
    before checking.  The outcome also records whether every pair is oriented
    (symbol 2 is one more than symbol 1).
    """
    P = with_base(P, base)
    _require_plain(P)
    table = code_table(P)
    verts = P.non_base
    if shifts:
        for j, u in enumerate(verts):
            table[:, j] = (table[:, j] + shifts.get(u, 0)) % 3
    n = len(verts)
    checked = 0
    oriented = True
    for j in range(n):
        bit = 1 << j
        tails = np.array([m for m in range(1 << n) if not m & bit], dtype=np.int64)
        lo = table[tails, j]
        hi = table[tails | bit, j]
        checked += tails.size
        same = np.flatnonzero(lo == hi)
        if same.size:
            m = int(tails[same[0]])
            return Outcome(
                False,
                checked,
                {"vertex": verts[j], "code_mask": m, "value": int(lo[same[0]])},
            )
        if np.any((hi - lo) % 3 != 1):
            oriented = False
    return Outcome(True, checked, None, {"oriented": oriented, "pairs_per_vertex": 1 << max(n - 1, 0)})


# ---------------------------------------------------------------------------
# polygons with inner vertices


def add_ear(state: PolygonTriangulation, tip: int, origin: int | None = None) -> PolygonTriangulation:
    """Join ``tip``'s two perimeter neighbours with a new outside triangle.

    ``tip`` becomes an inner vertex; a joined pair that is already adjacent
    gets a parallel edge.
    """
    if tip not in state.perimeter:
        raise NotOnPerimeter(f"{tip} is not on the perimeter")
    if tip in state.base:
        raise TipOnBase(f"{tip} is a base vertex")
    i = state.perimeter.index(tip)
    a, b = state.perimeter[i - 1], state.perimeter[i + 1]
    bd = state.boundary_darts
    t = state.t
    tris = state.triangles + ((a, b, tip),)
    twin = list(state.twin) + [-1, bd[i], bd[i - 1]]
    twin[bd[i]] = 3 * t + 1
    twin[bd[i - 1]] = 3 * t + 2
    perim = state.perimeter[:i] + state.perimeter[i + 1 :]
    orig = None
    if state.origin is not None or origin is not None:
        orig = tuple(state.origin or (None,) * t) + (origin,)
    return PolygonTriangulation(perim, tris, twin, orig)


def counted_vertices(P: PolygonTriangulation) -> tuple[int, ...]:
    """Inner vertices followed by non-base perimeter vertices."""
    return P.inner_vertices + P.non_base


def cv3_code_array(P, selected, max_triangles: int = DEFAULT_MAX_TRIANGLES) -> np.ndarray:
    if P.t > max_triangles:
        raise TooLarge(f"{P.t} triangles exceeds the exhaustion bound {max_triangles}")
    idx = P.local_index()
    weights = _kernels.digit_weights(len(idx), [idx[u] for u in selected])
    return _kernels.cv3_codes(P.incidence_array(), len(idx), weights)


def distinct_cv3_count(P: PolygonTriangulation, max_triangles: int = DEFAULT_MAX_TRIANGLES) -> int:
    """Exact number of distinct numberings on inner plus non-base vertices."""
    codes = cv3_code_array(P, counted_vertices(P), max_triangles)
    return int(np.unique(codes).size)


def numbering_lower_bound(P: PolygonTriangulation) -> int:
    """Least number of distinct numberings on inner plus non-base vertices."""
    return 3**P.v_i * 2 ** max(P.v_p - 2, 0)


def values_at(P: PolygonTriangulation, vertex: int, fixed: dict[int, int]) -> list[int]:
    """Numbers at ``vertex`` over all assignments agreeing with ``fixed``
    (triangle index -> value)."""
    free = [i for i in range(P.t) if i not in fixed]
    out = []
    for m in range(1 << len(free)):
        vals = dict(fixed)
        for j, i in enumerate(free):
            vals[i] = 2 if (m >> j) & 1 else 1
        out.append(sum(vals[i] for i in P.incident[vertex]) % 3)
    return out
