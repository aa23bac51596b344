import pytest

from planar4c.errors import (
    DegeneratePolygon,
    IncompleteAssignment,
    NoPreimage,
    NotOnPerimeter,
    TipOnBase,
    TooLarge,
)
from planar4c.graph import polygon_from_diagonals, wheel_polygon
from planar4c.instances import polygons
from planar4c.polygon import (
    add_ear,
    assignment_from_code,
    associate,
    catalan_count,
    cv3_code_array,
    decode_cv3_to_ct2,
    distinct_cv3_count,
    enumerate_polygons_on_base,
    find_ears,
    numbering_lower_bound,
    values_at,
    verify_difference_property,
    x1x2_code,
)
from planar4c.schemes import OrientationAssignment, complement, cv3_from_ct2


def brute_distinct(P, verts):
    return len(
        {cv3_from_ct2(P, OrientationAssignment.from_mask(m, P.t)).restricted(verts) for m in range(1 << P.t)}
    )


@pytest.mark.parametrize("v,count", [(3, 1), (4, 2), (5, 5), (6, 14), (7, 42), (8, 132)])
def test_catalan_enumeration(v, count):
    ps = list(enumerate_polygons_on_base(v))
    assert len(ps) == count == catalan_count(v)
    assert len({P.diagonals for P in ps}) == count
    for P in ps:
        assert P.perimeter == tuple(range(v))
        assert P.base == (0, v - 1)


def test_two_vertex_polygon():
    (P,) = enumerate_polygons_on_base(2)
    assert P.t == 0 and catalan_count(2) == 1


def test_square_ears():
    P = polygon_from_diagonals([0, 1, 2, 3], [(0, 2)])
    ears = find_ears(P)
    assert sorted(e.tip for e in ears) == [1, 3]
    for e in ears:
        assert len(e.perimeter_edges) == 2


def test_association_is_a_bijection():
    for v in range(3, 9):
        for P in polygons(v):
            assoc = associate(P)
            assert sorted(assoc.vertex_triangle) == sorted(P.non_base)
            assert sorted(assoc.vertex_triangle.values()) == list(range(P.t))


def test_decode_inverts_numbering():
    for P in polygons(7):
        for m in range(0, 1 << P.t, 3):
            a = OrientationAssignment.from_mask(m, P.t)
            assert decode_cv3_to_ct2(P, cv3_from_ct2(P, a)) == a


def test_injective_by_brute_force():
    for v in range(3, 8):
        for P in polygons(v):
            assert brute_distinct(P, P.non_base) == 2 ** (v - 2)


def test_decode_errors():
    P = polygon_from_diagonals([0, 1, 2, 3], [(0, 2)])
    with pytest.raises(NoPreimage):
        decode_cv3_to_ct2(P, {1: 0, 2: 1})
    with pytest.raises(IncompleteAssignment):
        decode_cv3_to_ct2(P, {1: 1})
    with pytest.raises(DegeneratePolygon):
        decode_cv3_to_ct2(wheel_polygon(4), {1: 1, 2: 1})


def test_x1x2_round_trip():
    for P in polygons(6):
        for m in range(1 << P.t):
            a = OrientationAssignment.from_mask(m, P.t)
            code = x1x2_code(P, a)
            assert assignment_from_code(P, code) == a
            assert assignment_from_code(P, code.flipped()) == complement(a)


def test_difference_property_small():
    for P in polygons(7):
        out = verify_difference_property(P)
        assert out.holds
        assert out.details["pairs_per_vertex"] == 2 ** (P.v_p - 3)
        shifted = verify_difference_property(P, shifts={P.non_base[0]: 2})
        assert shifted.holds


def test_difference_property_other_base():
    P = polygons(6)[4]
    assert verify_difference_property(P, base=(P.perimeter[1], P.perimeter[2])).holds


def test_add_ear_counts():
    P = polygon_from_diagonals([0, 1, 2, 3], [(0, 2)])
    Q = add_ear(P, 1)
    assert (Q.v_p, Q.v_i, Q.t) == (3, 1, 3)
    assert Q.perimeter == (0, 2, 3)


def test_add_ear_errors():
    P = polygon_from_diagonals([0, 1, 2, 3], [(0, 2)])
    with pytest.raises(TipOnBase):
        add_ear(P, 0)
    with pytest.raises(NotOnPerimeter):
        add_ear(P, 9)


def test_add_ear_until_two_vertices():
    P = polygons(6)[2]
    state = P
    while state.v_p > 2:
        state = add_ear(state, state.non_base[0])
    assert state.v_p == 2 and state.v_i == 4 and state.t == P.t + 4


@pytest.mark.parametrize("n", range(3, 9))
def test_wheel_counts_match_brute_force(n):
    P = wheel_polygon(n)
    got = distinct_cv3_count(P)
    assert got == brute_distinct(P, P.inner_vertices + P.non_base)
    assert got >= numbering_lower_bound(P)


def test_pentagon_wheel():
    P = wheel_polygon(5)
    assert numbering_lower_bound(P) == 24
    assert distinct_cv3_count(P) == 30


def test_code_array_bound():
    with pytest.raises(TooLarge):
        cv3_code_array(wheel_polygon(12), (12,), max_triangles=10)


def test_values_at_free_triangles():
    P = wheel_polygon(3)
    assert sorted(set(values_at(P, 3, {}))) == [0, 1, 2]
    # one free triangle at a perimeter vertex of degree 2 gives two values
    assert len(set(values_at(P, 0, {0: 1}))) == 2
