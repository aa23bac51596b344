import json

import pytest

from planar4c import io as pio
from planar4c import solver
from planar4c.cli import main
from planar4c.errors import PipelineCounterexample, TooLarge, Uncolorable
from planar4c.graph import find_separating_triangles
from planar4c.hamilton import degenerate_polygon, find_hamilton_circuit, split_by_circuit
from planar4c.instances import apollonian, octahedral_nest, polygon_pair, polygons, stacked
from planar4c.schemes import cv3_from_ct2, is_proper_vertex_coloring


def test_search_on_k4(k4):
    a, nodes = solver.search_good_ct2(k4)
    assert set(a.values) in ({1}, {2})
    assert nodes >= 1


def test_search_fails_on_single_triangle():
    a, nodes = solver.search_good_ct2(polygons(3)[0])
    assert a is None and nodes == 2


@pytest.mark.parametrize("limit", [0, solver.EXHAUSTIVE_LIMIT])
def test_search_paths_zero_the_free_vertices(ico, limit):
    D = degenerate_polygon(split_by_circuit(ico, find_hamilton_circuit(ico)))
    a, _ = solver.search_good_ct2(D, frozen=D.base, exhaustive_limit=limit)
    sums = cv3_from_ct2(D, a)
    assert all(sums[u] == 0 for u in D.vertices if u not in D.base)


def test_first_try_is_used(k4):
    a, _ = solver.search_good_ct2(k4)
    assert solver.search_good_ct2(k4, first_try=a) == (a, 1)


def test_corpus_solves(corpus8):
    for label, T in corpus8:
        col, trace = solver.four_color(T)
        assert is_proper_vertex_coloring(T, col), label
        solver.check_solution(T, col, trace)
        assert solver.replay(T, trace) == col, label


@pytest.mark.parametrize("T", [stacked(4), apollonian(11, 2), octahedral_nest(2)], ids=["stacked", "apollonian", "nest"])
def test_named_instances(T, ico):
    for G in (T, ico):
        col, trace = solver.four_color(G)
        assert is_proper_vertex_coloring(G, col)
        assert solver.replay(G, trace) == col


def test_even_degree_uses_three_colors(octa):
    for T in (octa, octahedral_nest(1), octahedral_nest(2)):
        col, _ = solver.four_color(T)
        assert len(set(col.colors)) <= 3


def test_split_trace_round_trip():
    T = stacked(3)
    assert find_separating_triangles(T)
    col, trace = solver.four_color(T)
    assert trace.kind == "split"
    back = solver.SolveTrace.from_dict(json.loads(json.dumps(trace.to_dict())))
    assert back == trace
    assert solver.replay(T, back) == col


def test_oracle(k4, octa):
    assert is_proper_vertex_coloring(k4, solver.four_color_oracle(k4))
    with pytest.raises(Uncolorable):
        solver.four_color_oracle(k4, palette=3)
    assert is_proper_vertex_coloring(octa, solver.four_color_oracle(octa, palette=3))
    with pytest.raises(TooLarge):
        solver.four_color_oracle(apollonian(20))


def test_failed_search_is_a_counterexample(monkeypatch, octa, tmp_path, capsys):
    monkeypatch.setattr(solver, "search_good_ct2", lambda *a, **k: (None, 0))
    with pytest.raises(PipelineCounterexample) as exc:
        solver.four_color(octa)
    assert "circuit" in exc.value.instance
    path = tmp_path / "octa.json"
    path.write_text(pio.dumps(pio.triangulation_to_dict(octa)))
    assert main(["solve", str(path)]) == 2
    doc = json.loads(capsys.readouterr().out)
    assert doc["type"] == "pipeline-counterexample"


def test_nine_vertex_sample():
    # every 37th inner and 41st outer polygon, without deduplication
    n = len(polygons(9))
    for i in range(0, n, 37):
        for o in range(0, n, 41):
            T = polygon_pair(9, i, o)
            col, trace = solver.four_color(T)
            assert is_proper_vertex_coloring(T, col), (i, o)
            assert solver.replay(T, trace) == col
