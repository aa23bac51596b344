"""Named triangulations and the instance families the audits run over."""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterator

from .errors import BadParams
from .graph import (
    PolygonTriangulation,
    Triangulation,
    build_triangulation,
    canonical_code,
    combine_polygons,
    wheel_polygon,
)
from .hamilton import rebuild, reconstruction_order
from .polygon import enumerate_polygons_on_base


def complete4() -> Triangulation:
    return build_triangulation([(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)])


def octahedron() -> Triangulation:
    ring = [1, 2, 3, 4]
    tris = []
    for i in range(4):
        a, b = ring[i], ring[(i + 1) % 4]
        tris += [(0, a, b), (5, b, a)]
    return build_triangulation(tris)


def icosahedron() -> Triangulation:
    tris = []
    for i in range(5):
        u, u2 = 1 + i, 1 + (i + 1) % 5
        l, l2 = 6 + i, 6 + (i + 1) % 5
        tris += [(0, u, u2), (u, l, u2), (u2, l, l2), (11, l2, l)]
    return build_triangulation(tris)


def _insert_vertex(tris: list, face: int, new: int) -> None:
    a, b, c = tris.pop(face)
    tris += [(a, b, new), (b, c, new), (c, a, new)]


def stacked(depth: int) -> Triangulation:
    """K4 with ``depth`` nested degree-3 insertions, each inside the last.

    Every insertion adds one separating triangle: v = 4 + depth.
    """
    if depth < 0:
        raise BadParams("depth must be >= 0")
    tris = [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)]
    last = 2
    for k in range(depth):
        new = 4 + k
        face = next(i for i, t in enumerate(tris) if set(t) == {0, 1, last})
        _insert_vertex(tris, face, new)
        last = new
    return build_triangulation(tris)


def apollonian(v: int, seed: int = 0) -> Triangulation:
    """Random stacked triangulation: repeated insertion into random faces."""
    if v < 4:
        raise BadParams("need v >= 4")
    rng = random.Random(seed)
    tris = [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)]
    for new in range(4, v):
        _insert_vertex(tris, rng.randrange(len(tris)), new)
    return build_triangulation(tris)


def octahedral_nest(level: int) -> Triangulation:
    """Octahedron with ``level`` faces successively replaced by octahedra.

    All degrees stay even; v = 6 + 3 * level.
    """
    if level < 0:
        raise BadParams("level must be >= 0")
    T = octahedron()
    tris = [tuple(t) for t in T.triangles]
    n = T.v
    for _ in range(level):
        a, b, c = tris.pop()  # a face touching the newest vertices
        x, y, z = n, n + 1, n + 2  # antipodes of a, b, c
        n += 3
        tris += [(a, b, z), (b, c, x), (c, a, y), (a, z, y), (b, x, z), (c, y, x), (x, y, z)]
    return build_triangulation(tris)


@lru_cache(maxsize=None)
def polygons(v: int) -> tuple[PolygonTriangulation, ...]:
    return tuple(enumerate_polygons_on_base(v))


def polygon_pair(v: int, i: int, o: int) -> Triangulation:
    ps = polygons(v)
    if not (0 <= i < len(ps) and 0 <= o < len(ps)):
        raise BadParams(f"polygon indices must lie in [0, {len(ps)})")
    return combine_polygons(ps[i], ps[o])


def generate(kind: str, **params) -> Triangulation:
    if kind == "complete4":
        return complete4()
    if kind == "octahedron":
        return octahedron()
    if kind == "icosahedron":
        return icosahedron()
    if kind == "stacked":
        return stacked(int(params.get("depth") or 1))
    if kind == "apollonian":
        return apollonian(int(params.get("v") or 8), int(params.get("seed") or 0))
    if kind == "octahedral":
        return octahedral_nest(int(params.get("depth") or 0))
    if kind == "polygon-pair":
        v = params.get("v")
        if v is None:
            raise BadParams("polygon-pair needs --v")
        return polygon_pair(int(v), int(params.get("i") or 0), int(params.get("o") or 0))
    raise BadParams(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# corpora


def triangulation_corpus(max_v: int, min_v: int = 4) -> Iterator[tuple[str, Triangulation]]:
    """Every polygon-pair triangulation with ``min_v <= v <= max_v``, once up
    to relabeling and reflection.  Swapping the pair mirrors the result, so
    only ``i <= j`` is combined."""
    for v in range(min_v, max_v + 1):
        seen = set()
        ps = polygons(v)
        for i in range(len(ps)):
            for j in range(i, len(ps)):
                T = combine_polygons(ps[i], ps[j])
                key = canonical_code(T)
                if key in seen:
                    continue
                seen.add(key)
                yield f"pair v={v} i={i} o={j}", T


def stacked_family(max_v: int = 12) -> Iterator[tuple[str, Triangulation]]:
    for d in range(0, max_v - 3):
        yield f"stacked depth={d}", stacked(d)
    for v in range(5, max_v + 1):
        for seed in range(3):
            yield f"apollonian v={v} seed={seed}", apollonian(v, seed)


def octahedral_family(max_v: int = 12) -> Iterator[tuple[str, Triangulation]]:
    level = 0
    while 6 + 3 * level <= max_v:
        yield f"octahedral level={level}", octahedral_nest(level)
        level += 1


def _subset(n: int) -> list[int]:
    return sorted({0, n // 2, n - 1})


def ear_addition_states(
    max_t: int, full_v: int = 7, max_v: int = 10
) -> Iterator[tuple[str, PolygonTriangulation]]:
    """Outer polygons with some of an inner polygon's ears added.

    All ordered pairs for ``v <= full_v``; first/middle/last polygons for
    larger ``v``.  Only states with at most ``max_t`` triangles are kept.
    """
    for v in range(4, max_v + 1):
        ps = polygons(v)
        idx = range(len(ps)) if v <= full_v else _subset(len(ps))
        for o in idx:
            for i in idx:
                steps = reconstruction_order(ps[i])
                states = rebuild(ps[o], ps[i], steps)
                for n, P in enumerate(states[1:], start=1):
                    if P.t <= max_t:
                        yield f"ears v={v} o={o} i={i} n={n}", P


def wheels(max_t: int) -> Iterator[tuple[str, PolygonTriangulation]]:
    for n in range(3, max_t + 1):
        yield f"wheel n={n}", wheel_polygon(n)
