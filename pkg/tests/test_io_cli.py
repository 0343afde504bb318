from __future__ import annotations

import json

import pytest
from conftest import instances
from hypothesis import given

from visrep.cli import main
from visrep.drawers import ic_rv_drawer, t_drawer
from visrep.generate import named, named_instances
from visrep.io import dumps, embedding_from_dict, embedding_to_dict, rep_from_dict, rep_to_dict
from visrep.shapes import VisibilityRepresentation
from visrep.svg import render_svg
from visrep.verifier import verify


@pytest.mark.parametrize("name", sorted(named_instances()))
def test_graph_json_round_trip(name):
    emb = named(name)
    d = embedding_to_dict(emb)
    back = embedding_from_dict(json.loads(dumps(d)))
    assert dumps(embedding_to_dict(back)) == dumps(d)
    assert sorted(map(len, back.plane.faces)) == sorted(map(len, emb.plane.faces))


@given(instances())
def test_random_graph_json_round_trip(inst):
    _, emb = inst
    back = embedding_from_dict(json.loads(dumps(embedding_to_dict(emb))))
    assert back.plane.faces == emb.plane.faces


def test_rep_json_round_trip():
    emb = named("dxw")
    rep = t_drawer(emb)
    d = rep_to_dict(rep)
    assert set(d) == {"mode", "polygons", "sights", "bounds", "flipped"}
    back = rep_from_dict(json.loads(dumps(d)))
    assert verify(back, emb.graph).valid
    assert dumps(rep_to_dict(back)) == dumps(d)


def test_dumps_is_sorted_with_newline():
    text = dumps({"b": 1, "a": [1, 2]})
    assert text == '{"a":[1,2],"b":1}\n'


def test_svg_empty_graph_has_frame():
    svg = render_svg(VisibilityRepresentation("planar", 0, (), ()))
    assert 'class="frame"' in svg and 'class="bar"' not in svg


def test_svg_kite():
    svg = render_svg(ic_rv_drawer(named("k4_kite")))
    assert svg.count('class="bar"') == 4
    assert svg.count("<line") == 6
    assert svg.count("<text") == 4


def test_svg_pylons_have_their_own_class():
    svg = render_svg(t_drawer(named("dxw")))
    assert 'class="pylon"' in svg
    assert svg == render_svg(t_drawer(named("dxw")))


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_cli_pipeline(tmp_path, capsys):
    g = tmp_path / "g.json"
    rep = tmp_path / "rep.json"
    svg = tmp_path / "rep.svg"
    assert main(["gen", "--kind", "one_planar", "-n", "24", "--seed", "3", "-o", str(g)]) == 0
    assert main(["draw", str(g), "--mode", "t", "-o", str(rep), "--svg", str(svg)]) == 0
    assert svg.read_text().startswith("<svg")
    code, out = run(capsys, "verify", str(rep), str(g), "--strict-area")
    assert code == 0
    assert json.loads(out.splitlines()[-1])["valid"] is True
    code, out = run(capsys, "render", str(rep))
    assert code == 0 and out.startswith("<svg")


def test_cli_gen_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["gen", "--kind", "ic", "-n", "40", "--seed", "9", "-o", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes().endswith(b"\n") and b"\r" not in a.read_bytes()


@pytest.mark.parametrize("mode", ["st", "leftish", "rhomboidal"])
def test_cli_order(capsys, mode):
    code, out = run(capsys, "order", "named:k4_kite", "--mode", mode)
    assert code == 0
    doc = json.loads(out)
    assert sorted(doc["delta"]) == [1, 2, 3, 4]
    assert doc["faces"]


def test_cli_augment(capsys):
    code, out = run(capsys, "augment", "named:b_config", "--undo-reroutes")
    assert code == 0
    doc = json.loads(out)
    assert "restored" in doc["tags"] and len(doc["reroutes"]) == 1


def test_cli_draw_compact_flip(capsys):
    code, out = run(capsys, "draw", "named:dxw", "--mode", "t", "--compact", "--flip")
    assert code == 0
    assert json.loads(out)["flipped"] is True


def test_cli_verify_failure_exit_code(tmp_path, capsys):
    g, rep = tmp_path / "g.json", tmp_path / "rep.json"
    main(["gen", "--named", "dxw", "-o", str(g)])
    main(["draw", str(g), "--mode", "t", "-o", str(rep)])
    d = json.loads(rep.read_text())
    d["polygons"][0]["bar"][0] += 1
    rep.write_text(json.dumps(d))
    code, out = run(capsys, "verify", str(rep), str(g))
    assert code == 2
    assert json.loads(out.splitlines()[-1])["valid"] is False


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["draw", str(tmp_path / "missing.json"), "--mode", "t"]) == 1
    assert main(["draw", "named:dxw", "--mode", "planar"]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["draw", str(bad), "--mode", "t"]) == 1
    with pytest.raises(SystemExit) as ex:
        main(["draw", "named:dxw"])
    assert ex.value.code == 3
    with pytest.raises(SystemExit) as ex:
        main(["frobnicate"])
    assert ex.value.code == 3
