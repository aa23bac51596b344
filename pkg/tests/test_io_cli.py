import json

import pytest

from planar4c import io as pio
from planar4c.cli import main
from planar4c.errors import ImproperInput
from planar4c.graph import wheel_polygon
from planar4c.hamilton import degenerate_polygon, find_hamilton_circuit, split_by_circuit
from planar4c.instances import polygons, stacked
from planar4c.schemes import OrientationAssignment, VertexColoring, v4c_to_e3c
from planar4c.solver import four_color


def round_trip(obj, G=None):
    return pio.from_dict(json.loads(pio.dumps(pio.to_dict(obj, G))))


def test_graph_round_trips(octa):
    assert round_trip(octa) == octa
    assert round_trip(stacked(3)) == stacked(3)
    P = wheel_polygon(5)
    assert round_trip(P) == P
    assert round_trip(polygons(6)[7]) == polygons(6)[7]


def test_multigraph_round_trip(ico):
    D = degenerate_polygon(split_by_circuit(ico, find_hamilton_circuit(ico)))
    assert D.has_multi_edges
    back = round_trip(D)
    assert back == D and back.edges == D.edges


def test_split_round_trip(octa):
    sp = split_by_circuit(octa, find_hamilton_circuit(octa))
    back = round_trip(sp)
    assert back.inner == sp.inner and back.outer == sp.outer and back.base == sp.base


def test_coloring_round_trips(octa):
    col, _ = four_color(octa)
    assert round_trip(col) == col
    ec = v4c_to_e3c(octa, col)
    assert round_trip(ec, octa) == ec
    a = OrientationAssignment((1, 2) * 4)
    assert round_trip(a) == a


def test_dot(octa):
    col, _ = four_color(octa)
    text = pio.to_dot(octa, col)
    fills = {line.split("fillcolor=")[1].rstrip("];") for line in text.splitlines() if ":" in line}
    assert len(fills) == 3
    assert text.count(" -- ") == octa.e
    with pytest.raises(ImproperInput):
        pio.to_dot(octa, VertexColoring((0,) * octa.v))


@pytest.fixture
def files(tmp_path, octa):
    g = tmp_path / "octa.json"
    g.write_text(pio.dumps(pio.triangulation_to_dict(octa)))
    return tmp_path, g


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_gen(capsys):
    code, out = run(capsys, "gen", "stacked", "--depth", "2")
    assert code == 0 and pio.from_dict(json.loads(out.out)) == stacked(2)
    code, out = run(capsys, "gen", "polygon-pair", "--v", "6", "--i", "1", "--o", "99")
    assert code == 1 and "indices" in out.err


def test_enum(capsys):
    code, out = run(capsys, "enum", "--v", "6")
    lines = out.out.splitlines()
    assert code == 0 and len(lines) == 14
    assert [json.loads(x)["index"] for x in lines] == list(range(14))
    code, out = run(capsys, "enum", "--v", "8", "--count-only")
    assert json.loads(out.out)["count"] == 132


def test_split_and_solve(capsys, files):
    tmp, g = files
    code, out = run(capsys, "split", g, "--circuit", "0,1,2,5,3,4", "--base", "0,1")
    doc = json.loads(out.out)
    assert code == 0 and doc["type"] == "split" and set(doc["base"]) == {0, 1}
    code, out = run(capsys, "solve", g, "--oracle", "--trace", tmp / "t.json", "--dot", tmp / "c.dot")
    doc = json.loads(out.out)
    assert code == 0 and doc["colors_used"] == 3 and doc["oracle_agrees"]
    assert json.loads((tmp / "t.json").read_text())["trace"]["kind"] == "hamilton"
    assert (tmp / "c.dot").read_text().startswith("graph G {")


def test_convert_round_trip(capsys, files):
    tmp, g = files
    run(capsys, "solve", g, "-o", tmp / "col.json")
    assert run(capsys, "convert", tmp / "col.json", "--graph", g, "--to", "ct2", "-o", tmp / "ct2.json")[0] == 0
    assert run(capsys, "convert", tmp / "ct2.json", "--graph", g, "--to", "e3c", "-o", tmp / "e3c.json")[0] == 0
    code, out = run(capsys, "convert", tmp / "e3c.json", "--graph", g, "--to", "v4c")
    col = pio.load(str(tmp / "col.json"))
    back = pio.from_dict(json.loads(out.out))
    assert code == 0

    def classes(c):
        return {frozenset(u for u in range(6) if c.colors[u] == k) for k in set(c.colors)}

    # same color classes, possibly renamed
    assert classes(back) == classes(col)


def test_export(capsys, files):
    tmp, g = files
    run(capsys, "solve", g, "-o", tmp / "col.json")
    code, out = run(capsys, "export", g, "--coloring", tmp / "col.json", "--format", "dot")
    assert code == 0 and "fillcolor=cyan" in out.out
    code, out = run(capsys, "export", g)
    assert code == 0 and json.loads(out.out)["type"] == "export"
    (tmp / "bad.json").write_text(pio.dumps(pio.vertex_coloring_to_dict(VertexColoring((0,) * 6))))
    code, out = run(capsys, "export", g, "--coloring", tmp / "bad.json")
    assert code == 1 and "not proper" in out.err


def test_audit_exit_codes(capsys, tmp_path):
    code, out = run(capsys, "audit", "--statement", "TBL42", "--max-v", "8", "--jobs", "1")
    assert code == 0 and json.loads(out.out)["verdict"] == "holds"
    code, _ = run(capsys, "audit", "--statement", "S8", "--budget", "0", "--report", tmp_path / "r.json")
    assert code == 3
    assert json.loads((tmp_path / "r.json").read_text())["verdict"] == "exhausted-bound"


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "solve", tmp_path / "missing.json")[0] == 1
    (tmp_path / "junk.json").write_text("{not json")
    assert run(capsys, "solve", tmp_path / "junk.json")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["audit", "--statement", "T9"])
    assert exc.value.code == 2


def test_stdin(capsys, monkeypatch, octa):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(pio.dumps(pio.triangulation_to_dict(octa))))
    code, out = run(capsys, "solve", "-")
    assert code == 0 and json.loads(out.out)["type"] == "vertex-coloring"


def test_repeat_runs_are_byte_identical(capsys, files):
    _, g = files
    for argv in (["solve", g], ["audit", "--statement", "T2", "--max-v", "6", "--jobs", "1"], ["enum", "--v", "5"]):
        first = run(capsys, *argv)[1].out
        assert run(capsys, *argv)[1].out == first
