import json

import pytest

from planar4c import audit as A
from planar4c.errors import ImproperInput, Planar4cError, TooLarge, UnknownStatement
from planar4c.graph import polygon_from_diagonals, wheel_polygon
from planar4c.instances import complete4, polygons
from planar4c.schemes import EdgeColoring, all_good_assignments


def tait_colorings(G):
    """Proper edge colorings by backtracking, edge by edge."""
    out = []
    cols = [-1] * G.e
    tris_of = [[] for _ in range(G.e)]
    for i in range(G.t):
        for eid in G.triangle_edges(i):
            tris_of[eid].append(i)

    def go(eid):
        if eid == G.e:
            out.append(tuple(cols))
            return
        for c in range(3):
            cols[eid] = c
            if all(
                len({cols[x] for x in G.triangle_edges(i) if cols[x] >= 0})
                == sum(1 for x in G.triangle_edges(i) if cols[x] >= 0)
                for i in tris_of[eid]
            ):
                go(eid + 1)
        cols[eid] = -1

    go(0)
    return out


@pytest.mark.parametrize(
    "t,target,want", [(1, 0, 0), (1, 1, 1), (2, 0, 2), (3, 0, 2), (4, 1, 5), (7, 1, 43), (7, 0, 42)]
)
def test_closed_form_examples(t, target, want):
    assert A.closed_form_count(t, target) == want


@pytest.mark.parametrize("t", range(1, 13))
def test_counts_agree(t):
    for r in range(3):
        want = A._count_by_product(t, r)
        assert A.closed_form_count(t, r) == A.brute_force_count(t, r) == want
    assert sum(A.closed_form_count(t, r) for r in range(3)) == 2**t


def test_count_table_columns():
    for t, row in A.COUNT_TABLE.items():
        assert row == tuple(A.closed_form_count(t, r) for r in range(3))
        assert sum(row) == 2**t


def test_count_errors():
    with pytest.raises(ValueError):
        A.closed_form_count(0, 0)
    with pytest.raises(TooLarge):
        A.brute_force_count(30, 0)


def test_parity_single_triangle():
    P = polygons(3)[0]
    assert A.perimeter_parity_check(P, EdgeColoring((0, 1, 2)))


def test_parity_square_every_coloring():
    P = polygon_from_diagonals([0, 1, 2, 3], [(0, 2)])
    cols = tait_colorings(P)
    assert len(cols) == 12
    for c in cols:
        ids = A.polygon_identities(P, EdgeColoring(c))
        assert all(ids.values()), ids


def test_parity_rejects_improper():
    P = polygons(3)[0]
    with pytest.raises(ImproperInput):
        A.perimeter_parity_check(P, EdgeColoring((0, 0, 1)))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_good_count_matches_tait_count_on_wheels(n):
    P = wheel_polygon(n)
    good = all_good_assignments(P, constrained=P.inner_vertices)
    assert len(tait_colorings(P)) == 3 * len(good)


def test_good_count_matches_tait_count_on_polygons():
    for P in polygons(6):
        assert len(tait_colorings(P)) == 3 * 2**P.t


def test_unknown_statement():
    with pytest.raises(UnknownStatement):
        A.audit("T9")


def test_aliases():
    assert A.audit("table-4.2", max_v=6).statement == "TBL42"


def test_small_audits_hold():
    for st, kw in [("T1", {"max_v": 7}), ("T2", {"max_v": 6}), ("T3", {"max_v": 6, "max_t": 8}),
                   ("T4", {"max_v": 5, "max_t": 7}), ("S8", {"max_v": 6}), ("TBL42", {"max_v": 10})]:
        rep = A.audit(st, **kw)
        assert rep.verdict == "holds", (st, rep.counterexample)
        assert rep.checked > 0 and rep.exit_code == 0


def test_counterexample_is_reported():
    # K4 has odd degrees, so the count of distinct numberings is not 3^(v-2)
    clock = A._Budget(None)
    res = A._run([("k4", complete4())], A._check_c1, clock)
    rep = A._report("C1", "k4 only", res, A._recheck_c1, clock)
    assert rep.verdict == "counterexample" and rep.exit_code == 2
    assert rep.counterexample["violation"] == {"distinct": 15, "expected": 9}
    assert rep.counterexample["instance"]["type"] == "triangulation"


def test_unverified_violation_raises():
    clock = A._Budget(None)
    fake = lambda T: (1, {"distinct": 9, "expected": 9})  # noqa: E731
    res = A._run([("k4", complete4())], fake, clock)
    with pytest.raises(Planar4cError):
        A._report("C1", "k4 only", res, A._recheck_c1, clock)


def test_budget_exhaustion():
    rep = A.audit("S8", budget=0.0)
    assert rep.verdict == "exhausted-bound" and rep.exit_code == 3


def test_parallel_matches_serial():
    one = A.audit("T2", max_v=7, jobs=1).to_dict()
    two = A.audit("T2", max_v=7, jobs=2).to_dict()
    assert one == two


def test_report_is_reproducible():
    a = json.dumps(A.audit("T1", max_v=6).to_dict(), sort_keys=True)
    b = json.dumps(A.audit("T1", max_v=6).to_dict(), sort_keys=True)
    assert a == b and "elapsed" not in a
    assert "elapsed" in A.audit("T1", max_v=5).to_dict(include_time=True)
