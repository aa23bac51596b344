import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planar4c.errors import (
    InconsistentOrientation,
    InvalidPolygon,
    NotATriangulation,
    NotSeparating,
    PerimeterMismatch,
    UnknownVertex,
)
from planar4c.graph import (
    SeparatingTriangle,
    build_polygon,
    build_triangulation,
    canonical_code,
    combine_polygons,
    find_separating_triangles,
    next_dart,
    polygon_from_diagonals,
    reverse_triple,
    split_off_separating_triangle,
    wheel_polygon,
)
from planar4c.instances import apollonian, octahedral_nest, polygons, stacked, triangulation_corpus


def brute_separating(T):
    """Vertex triples forming a non-facial triangle in a simple graph."""
    faces = {frozenset(t) for t in T.triangles}
    nb = T.neighbors
    return sorted(
        c
        for c in itertools.combinations(T.vertices, 3)
        if c[1] in nb[c[0]] and c[2] in nb[c[0]] and c[2] in nb[c[1]] and frozenset(c) not in faces
    )


def test_k4_counts(k4):
    assert (k4.v, k4.t, k4.e) == (4, 4, 6)
    assert all(k4.triangle_degree(u) == 3 for u in k4.vertices)
    assert not k4.has_multi_edges


def test_rotation_returns_after_degree(octa):
    for d in range(3 * octa.t):
        x = d
        for _ in range(octa.triangle_degree(octa.tail(d))):
            x = octa.rotate(x)
        assert x == d
        assert octa.tail(x) == octa.tail(d)


def test_twin_reverses_dart(ico):
    for d in range(3 * ico.t):
        o = ico.twin[d]
        assert (ico.tail(o), ico.head(o)) == (ico.head(d), ico.tail(d))
        assert next_dart(next_dart(next_dart(d))) == d


def test_euler_on_corpus():
    for _, T in triangulation_corpus(7):
        assert T.e == 3 * T.v - 6
        assert T.t == 2 * (T.v - 2)


def test_unknown_vertex(k4):
    with pytest.raises(UnknownVertex):
        k4.triangle_degree(99)


@pytest.mark.parametrize(
    "tris",
    [
        [(0, 1, 2), (0, 2, 3), (0, 3, 1)],  # wrong count
        [(0, 1, 1), (0, 2, 3), (0, 3, 1), (1, 3, 2)],  # repeated vertex
        [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 5)],  # ids not dense
    ],
)
def test_rejects_non_triangulations(tris):
    with pytest.raises(NotATriangulation):
        build_triangulation(tris)


def test_simple_input_is_reoriented():
    T = build_triangulation([(0, 1, 2), (0, 3, 2), (0, 3, 1), (1, 3, 2)])
    assert T.v == 4 and T.e == 6


def test_same_direction_pairing_rejected(k4):
    twin = list(k4.twin)
    # pair dart 0 (0->1) with dart 2 (2->0) of the same triangle
    with pytest.raises((InconsistentOrientation, NotATriangulation)):
        build_triangulation(k4.triangles, twin=[2, 0, 0] + twin[3:])


def test_multigraph_orientation_checked():
    P = polygons(5)[0]
    T = combine_polygons(P, P)
    assert T.has_multi_edges
    flipped = [reverse_triple(T.triangles[0])] + list(T.triangles[1:])
    with pytest.raises(InconsistentOrientation):
        build_triangulation(flipped)


def test_multigraph_roundtrip_without_twin():
    P = polygons(6)[3]
    T = combine_polygons(P, P)
    again = build_triangulation(T.triangles)
    assert again.e == T.e and again.edge_multiplicity == T.edge_multiplicity


def test_polygon_from_diagonals_square():
    P = polygon_from_diagonals([0, 1, 2, 3], [(0, 2)])
    assert P.t == 2 and P.v_p == 4 and P.base == (0, 3)
    assert P.diagonals == ((0, 2),)
    assert P.non_base == (1, 2)


def test_polygon_two_vertices_is_empty():
    P = polygon_from_diagonals([4, 7])
    assert P.t == 0 and P.v_p == 2


@pytest.mark.parametrize("diags", [[(0, 1)], [(0, 2), (1, 3)], []])
def test_polygon_from_bad_diagonals(diags):
    with pytest.raises(InvalidPolygon):
        polygon_from_diagonals([0, 1, 2, 3], diags)


def test_wheel_polygon():
    P = wheel_polygon(5)
    assert (P.v_p, P.v_i, P.t) == (5, 1, 5)
    assert P.inner_vertices == (5,)


def test_build_polygon_with_inner_vertex():
    P = build_polygon([0, 1, 2], [(0, 1, 3), (1, 2, 3), (2, 0, 3)])
    assert P.v_i == 1 and P.perimeter_edges and len(P.boundary_darts) == 3


@pytest.mark.parametrize("depth", range(0, 6))
def test_stacked_separating_count(depth):
    T = stacked(depth)
    assert T.v == 4 + depth
    assert len(find_separating_triangles(T)) == depth


def test_separating_against_brute_force():
    cases = [T for _, T in triangulation_corpus(7) if not T.has_multi_edges]
    cases += [apollonian(v, s) for v in range(5, 11) for s in range(3)]
    cases.append(octahedral_nest(1))
    for T in cases:
        got = sorted(s.vertices for s in find_separating_triangles(T))
        assert got == brute_separating(T)


def test_split_parts_share_the_triangle():
    T = apollonian(10, 2)
    for s in find_separating_triangles(T):
        parent, child = split_off_separating_triangle(T, s)
        assert parent.v + child.v == T.v + 3
        assert parent.t + child.t == T.t + 2
        shared = set(s.vertices)
        assert {parent.labels[u] for u in parent.triangles[-1]} == shared
        assert {child.labels[u] for u in child.triangles[-1]} == shared
        assert min(set(range(T.v)) - shared) in parent.labels


def test_split_rejects_facial_cycle(k4):
    face = tuple(sorted(k4.triangles[0]))
    edges = k4.triangle_edges(0)
    with pytest.raises(NotSeparating):
        split_off_separating_triangle(k4, SeparatingTriangle(face, edges))


def test_combine_perimeter_mismatch():
    with pytest.raises(PerimeterMismatch):
        combine_polygons(polygons(5)[0], polygons(6)[0])


def test_combine_counts():
    for v in range(3, 7):
        ps = polygons(v)
        for a in ps:
            for b in ps:
                T = combine_polygons(a, b)
                assert T.v == v and T.t == 2 * (v - 2)


def _relabel(T, perm):
    return build_triangulation([tuple(perm[u] for u in t) for t in T.triangles])


@settings(max_examples=40, deadline=None)
@given(st.integers(6, 9), st.integers(0, 10**6))
def test_canonical_code_invariant(v, seed):
    T = apollonian(v, seed % 7)
    rng = random.Random(seed)
    perm = list(range(v))
    rng.shuffle(perm)
    same = _relabel(T, perm)
    mirror = build_triangulation([reverse_triple(t) for t in T.triangles])
    assert canonical_code(same) == canonical_code(T) == canonical_code(mirror)


def test_canonical_code_separates():
    assert canonical_code(octahedral_nest(0)) != canonical_code(stacked(2))
    v8 = [T for _, T in triangulation_corpus(8, min_v=8)]
    assert len({canonical_code(T) for T in v8}) == len(v8)
