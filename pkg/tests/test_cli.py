import json
import subprocess
import sys
import xml.etree.ElementTree as ET
from fractions import Fraction as F

import pytest

from shapelift.cli import main
from shapelift.domains import Ball
from shapelift.exactgeom import PolyPath
from shapelift.obstruct import ObstructionInstance
from shapelift.svg import Scene, emit_svg, lift_scene, obstruct_scene, render_svg
from shapelift.checks import PL_SOURCE, PL_WITNESS

SVG = "{http://www.w3.org/2000/svg}"
E13 = '{"type":"ellipsoid","a":"1","b":"3"}'
VERTICAL = '[["9/20","3/2"],["9/20","16/5"]]'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_shape_and_knotted(capsys, tmp_path):
    dom = tmp_path / "ball.json"
    dom.write_text('{"type": "ball", "R": "301/100"}')
    code, rep = run_json(capsys, "shape", "--domain", str(dom), "--point", "1,2")
    assert code == 0 and rep["member"] is True and rep["input"]["domain"]["R"] == "301/100"
    code, rep = run_json(capsys, "knotted", "--domain", E13, "--point", "9/20,3/2")
    assert code == 0 and rep["member"] is True


def test_lift_verdicts_and_exit_codes(capsys):
    code, rep = run_json(capsys, "lift", "--domain", E13, "--path", VERTICAL)
    assert code == 0 and rep["verdict"] == "obstructed"
    detour = '[["9/20","3/2"],["3/10","4/5"],["3/10","16/5"]]'
    code, rep = run_json(capsys, "lift", "--domain", E13, "--path", detour)
    assert code == 0 and rep["verdict"] == "lifts"
    stuck = '[["9/10","13/10"],["7/5","8/5"]]'
    code, rep = run_json(capsys, "lift", "--domain", '{"type":"ball","R":"3"}', "--path", stuck)
    assert code == 2 and rep["verdict"] == "undetermined"


def test_lift_with_breakpoints(capsys):
    zig = '[["3/10","4/5"],["3/10","3"],["3/10","1"],["3/5","1"]]'
    code, rep = run_json(capsys, "lift", "--domain", E13, "--path", zig, "--breakpoints", "32/15")
    assert code == 0 and rep["certificate"]["breakpoints"] == ["32/15"]
    code, rep = run_json(capsys, "lift", "--domain", E13, "--path", zig, "--breakpoints", "")
    assert code == 2


def test_input_errors_exit_one(capsys):
    code, _, err = run(capsys, "shape", "--domain", '{"type": "ball", "R": }', "--point", "1,2")
    assert code == 1 and "line 1, column" in err
    code, _, err = run(capsys, "shape", "--domain", '{"type": "ball", "R": "3"}', "--point", "1.5,2")
    assert code == 1
    code, _, err = run(capsys, "shape", "--domain", "/nonexistent/d.json", "--point", "1,2")
    assert code == 1 and "cannot read" in err
    code, _, err = run(capsys, "knotted", "--domain", E13, "--point", "2,1")
    assert code == 1


def test_capacity_lattice_embed(capsys):
    code, rep = run_json(capsys, "capacity", "--a", "1", "--b", "2", "--count", "8")
    assert rep["sequence"] == ["0", "1", "2", "2", "3", "3", "4", "4", "4"] and rep["index_origin"] == 0
    code, rep = run_json(capsys, "lattice", "--a", "2", "--b", "9", "--t", "6", "--mode", "brute_force")
    assert rep["count"] == 4
    code, rep = run_json(capsys, "embed", "--from", "1,5", "--into", "2,2", "--horizon", "50")
    assert code == 0 and rep["verdict"] == "obstructed_at" and rep["k"] == 5


def test_obstruct_command(capsys, tmp_path):
    src = tmp_path / "x.json"
    src.write_text(json.dumps({"type": "toric_pl", "profile": [["0", "24"], ["2", "17"], ["19", "0"]]}))
    wit = tmp_path / "w.json"
    wit.write_text(json.dumps(PL_WITNESS.to_json()))
    svg = tmp_path / "o.svg"
    code, rep = run_json(capsys, "obstruct", "--source", str(src), "--target", '{"type":"ball","R":"20"}',
                         "--witness", str(wit), "--svg", str(svg))
    assert code == 0 and rep["verdict"] == "obstructed"
    assert all(rep["given_witness_clauses"].values())
    assert rep["witness"] == PL_WITNESS.to_json()
    root = ET.parse(svg).getroot()
    assert root.findall(f"{SVG}polyline") and root.findall(f"{SVG}line")
    code, rep = run_json(capsys, "obstruct", "--source", '{"type":"ball","R":"1"}',
                         "--target", '{"type":"ball","R":"20"}', "--search", "4")
    assert code == 2 and rep["verdict"] == "inconclusive"


def test_sft_commands(capsys):
    assert run_json(capsys, "sft", "general", "--pos", "7", "--neg", "6")[1]["value"] == 1
    assert run_json(capsys, "sft", "torus", "--neg-pair", "1,0")[1]["value"] == 1
    assert run_json(capsys, "sft", "bidegree", "--neg-pair", "0,-1", "--d2", "1")[1]["value"] == 1
    assert run_json(capsys, "sft", "plane-area", "--r", "1", "--s", "3", "--m", "3", "--n", "1")[1]["value"] == "6"
    assert run(capsys, "sft", "plane-area", "--r", "1")[0] == 1


def test_reports_are_deterministic_and_round_trip(capsys):
    first = run(capsys, "lift", "--domain", E13, "--path", VERTICAL, "--json")[1]
    second = run(capsys, "lift", "--domain", E13, "--path", VERTICAL, "--json")[1]
    assert first == second
    rep = json.loads(first)
    assert rep["version"]
    assert PolyPath.from_json(rep["input"]["path"]) == PolyPath([(F(9, 20), F(3, 2)), (F(9, 20), F(16, 5))])
    assert json.dumps(rep, sort_keys=True, indent=2) == first.strip()


def test_verify_table_and_json(capsys, monkeypatch):
    monkeypatch.setenv("SHAPELIFT_THREADS", "1")
    code, out, _ = run(capsys, "verify", "--only", "1,5,11")
    assert code == 0 and out.count("[PASS]") == 3 and "all passed" in out
    a = run(capsys, "verify", "--only", "1,5", "--json")[1]
    b = run(capsys, "verify", "--only", "1,5", "--json")[1]
    assert a == b and json.loads(a)["passed"] is True


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "shapelift.cli", "capacity", "--a", "1", "--b", "1",
                           "--count", "5", "--json"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["sequence"] == ["0", "1", "1", "2", "2", "2"]


def test_svg_has_one_polygon_per_region(tmp_path):
    scene = lift_scene(Ball(3))
    out = tmp_path / "b.svg"
    emit_svg(scene, out)
    root = ET.parse(out).getroot()
    regions = root.findall(f"{SVG}polygon[@class='region']")
    assert sorted({p.get("data-label") for p in regions}) == sorted(r.label for r in scene.regions)
    assert len(regions) == sum(len(r.polygons) for r in scene.regions)
    knotted = [r for r in scene.regions if r.label == "knotted"]
    assert len(knotted) == 1 and len(knotted[0].polygons) == 1
    assert not root.findall(f"{SVG}polyline")
    assert render_svg(scene) == render_svg(lift_scene(Ball(3)))


def test_obstruction_scene_contents():
    scene = obstruct_scene(ObstructionInstance(PL_SOURCE, Ball(20)), PL_WITNESS)
    root = ET.fromstring(render_svg(scene))
    labels = {p.get("data-label") for p in root.iter() if p.get("data-label")}
    assert {"target", "target minus excluded", "excluded boundary", "witness"} <= labels
    assert len(root.findall(f"{SVG}polyline[@class='path']")) == 1


def test_empty_scene_is_refused(tmp_path):
    with pytest.raises(ValueError):
        emit_svg(Scene("empty", [], (F(1), F(1))), tmp_path / "e.svg")


def test_plot_command_writes_svg(capsys, tmp_path):
    out = tmp_path / "p.svg"
    code, rep = run_json(capsys, "plot", "--domain", E13, "--path", VERTICAL, "--svg", str(out))
    assert code == 0 and out.exists()
    assert run(capsys, "plot", "--domain", E13, "--svg", str(tmp_path / "missing" / "p.svg"))[0] == 1
