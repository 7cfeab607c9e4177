import json

import pytest

from nodeflow import geometry
from nodeflow.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_demo_writes_canonical_file(tmp_path, capsys):
    target = tmp_path / "node.json"
    code, out, _ = run(capsys, "demo", "-o", str(target))
    assert code == 0
    data = json.loads(target.read_text())
    assert [l["supply"] for l in data["outgoing"]] == [1400, 400, 1400]
    assert [l["demand"] for l in data["incoming"]] == [100, 600, 600]

    # stdout variant emits the same bytes
    code, out, _ = run(capsys, "demo", "-o", "-")
    assert code == 0
    assert out == target.read_text()


def test_demo_refuses_overwrite_without_force(tmp_path, capsys):
    target = tmp_path / "node.json"
    target.write_text("{}")
    code, _, err = run(capsys, "demo", "-o", str(target))
    assert code == 1 and "exists" in err
    code, _, _ = run(capsys, "demo", "-o", str(target), "--force")
    assert code == 0


def test_validate_demo_and_errors(tmp_path, capsys):
    code, out, _ = run(capsys, "validate", "demo")
    assert code == 0 and "ok" in out

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2

    negative = tmp_path / "neg.json"
    negative.write_text(json.dumps({
        "incoming": [{"label": "A", "demand": 10}],
        "outgoing": [{"label": "X", "supply": -5}],
        "turning": [[1]],
    }))
    code, out, _ = run(capsys, "validate", str(negative))
    assert code == 1
    assert "negative supply" in out


def test_solve_inm_table(capsys):
    code, out, _ = run(capsys, "solve", "--solver", "inm", "--alpha", "0.1,10,1", "demo")
    assert code == 0
    assert "E = 50/3 (16.667)" in out
    assert "total: 2350/3 (783.333)" in out
    assert "holding-free: yes" in out
    assert "pareto-optimal: yes" in out


def test_solve_greedy_and_flowmax(capsys):
    code, out, _ = run(capsys, "solve", "--solver", "greedy", "--order", "N,S,E", "demo")
    assert code == 0
    assert "E = 0 " in out and "N = 600 " in out and "S = 200 " in out

    code, out, _ = run(capsys, "solve", "--solver", "flowmax", "demo")
    assert code == 0
    assert "total: 800 (800.000)" in out


def test_solve_json_byte_identical(capsys):
    code, first, _ = run(capsys, "solve", "--solver", "inm", "--alpha", "0.1,10,1",
                         "demo", "--format", "json")
    assert code == 0
    payload = json.loads(first)
    assert payload["total"]["frac"] == "2350/3"
    code, second, _ = run(capsys, "solve", "--solver", "inm", "--alpha", "0.1,10,1",
                          "demo", "--format", "json")
    assert first == second


def test_solve_option_validation(capsys):
    code, _, err = run(capsys, "solve", "--solver", "greedy", "demo")
    assert code == 1 and "--order" in err
    code, _, err = run(capsys, "solve", "--solver", "greedy", "--order", "N,S,E",
                       "--alpha", "1,1,1", "demo")
    assert code == 1 and "--alpha" in err
    code, _, err = run(capsys, "solve", "--solver", "flowmax", "--alpha", "1,1,1", "demo")
    assert code == 1
    code, _, err = run(capsys, "solve", "--solver", "inm", "--alpha", "0,1,1", "demo")
    assert code == 1
    code, _, err = run(capsys, "solve", "--solver", "greedy", "--order", "N,S,Q", "demo")
    assert code == 1
    code, _, err = run(capsys, "solve", "--solver", "inm", "--alpha", "1,1", "demo")
    assert code == 1


def test_solve_writes_scene(tmp_path, capsys):
    scene_path = tmp_path / "scene.json"
    code, _, _ = run(capsys, "solve", "--solver", "inm", "--alpha", "0.1,10,1",
                     "demo", "--scene", str(scene_path))
    assert code == 0
    scene = geometry.scene_from_json(scene_path.read_text())
    assert [m.name for m in scene.markers] == ["INM"]
    assert len(scene.traces) == 1


def test_check_verdicts(capsys):
    code, out, _ = run(capsys, "check", "demo", "0,600,200")
    assert code == 0
    assert "holding-free: yes" in out and "pareto-optimal: yes" in out

    code, out, _ = run(capsys, "check", "demo", "0,0,0")
    assert code == 0
    assert "holding-free: no" in out and "pareto-optimal: no" in out
    assert "witness" in out

    code, out, _ = run(capsys, "check", "demo", "0,600,600")
    assert code == 1
    assert "infeasible" in out


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", "demo", "0,0,0", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["residual"]["frac"] == "672040000"
    assert payload["holding_free"] is False
    assert payload["pareto_optimal"] is False
    assert payload["witness"] is not None


def test_check_bad_vector(capsys):
    code, _, err = run(capsys, "check", "demo", "0,600")
    assert code == 1
    code, _, err = run(capsys, "check", "demo", "0,600,x")
    assert code == 1


def test_geometry_lists_vertices(capsys):
    code, out, _ = run(capsys, "geometry", "demo")
    assert code == 0
    assert "8 vertices" in out
    assert "[0, 600, 200]" in out


def test_geometry_scene_has_named_markers(tmp_path, capsys):
    scene_path = tmp_path / "scene.json"
    code, out, _ = run(capsys, "geometry", "demo", "--alpha", "0.1,10,1",
                       "--scene", str(scene_path))
    assert code == 0
    scene = geometry.scene_from_json(scene_path.read_text())
    names = [m.name for m in scene.markers]
    assert names == ["INM", "FM-A", "FM-B", "Gr-A", "Gr-B"]
    points = {m.name: m.point for m in scene.markers}
    assert points["INM"][1] == 600
    assert {points["FM-A"], points["FM-B"]} == {(0, 200, 600), (0, 600, 200)}
    assert {points["Gr-A"], points["Gr-B"]} == {(100, 600, 0), (100, 0, 600)}
    assert len(scene.frontier) > 0


def test_geometry_dimension_limit(tmp_path, capsys):
    seven = {
        "incoming": [{"label": f"I{i}", "demand": 10} for i in range(7)],
        "outgoing": [{"label": "X", "supply": 1000}],
        "turning": [[1] for _ in range(7)],
    }
    path = tmp_path / "seven.json"
    path.write_text(json.dumps(seven))
    code, _, err = run(capsys, "geometry", str(path))
    assert code == 1
    assert "limit" in err


def test_missing_file_is_io_error(capsys):
    code, _, err = run(capsys, "solve", "--solver", "flowmax", "/nonexistent.json")
    assert code == 2
