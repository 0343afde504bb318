from __future__ import annotations

from collections import Counter

import pytest
from conftest import instances
from hypothesis import given
from oracles import scan_oracle

from visrep.drawers import compact_levels, draw_planar, ic_rv_drawer, t_drawer, t_drawing, visibility_drawer
from visrep.errors import ValidationError
from visrep.generate import generate_instance, named
from visrep.shapes import flip_vertical
from visrep.verifier import check_area, check_shape_taxonomy, check_thickness_two, verify

MODE_OF = {"planar": "planar", "ic": "flat_rectangle", "one_planar": "t_shape"}
DRAW = {"planar": draw_planar, "ic": ic_rv_drawer, "one_planar": t_drawer}


def one_sight_per_edge(rep, g):
    return Counter(frozenset(s.edge) for s in rep.sights) == Counter(frozenset(e) for e in g.edges)


@pytest.mark.parametrize("name,draw", [
    ("c3", draw_planar), ("k4_planar", draw_planar), ("w4", draw_planar),
    ("k4_kite", ic_rv_drawer), ("xw6", t_drawer), ("dxw", t_drawer),
    ("b_config", t_drawer), ("w_config", t_drawer),
])
def test_named_instances_draw_and_verify(name, draw):
    emb = named(name)
    rep = draw(emb)
    assert verify(rep, emb.graph).valid
    assert one_sight_per_edge(rep, emb.graph)
    assert check_area(rep, emb.n)
    assert scan_oracle(rep, emb.graph.edges) == []


def test_c3_bars():
    rep = draw_planar(named("c3"))
    assert rep.bounds == (1, 2)
    assert sorted(p.y for p in rep.polygons) == [0, 1, 2]


def test_visibility_drawer_on_plane_graph():
    emb = named("k4_planar")
    rep = visibility_drawer(emb)
    assert all(s.dir == "v" for s in rep.sights)
    assert verify(rep, emb.graph).valid


def test_planar_mode_rejects_crossings():
    with pytest.raises(ValidationError):
        draw_planar(named("k4_kite"))


def test_kite_free_graph_gets_no_pylons():
    emb = named("w4")
    rep = t_drawer(emb)
    assert all(p.pylon is None for p in rep.polygons)
    assert verify(rep, emb.graph).valid


def test_kite_k4_flat_rectangles():
    emb = named("k4_kite")
    rep = ic_rv_drawer(emb)
    assert all(p.pylon is None for p in rep.polygons)
    assert Counter(s.dir for s in rep.sights) == {"v": 5, "h": 1}


def test_dxw_pylons():
    td = t_drawing(named("dxw"))
    owners = {p.v for p in td.rep.polygons if p.pylon is not None}
    # labels 1, 2, 5 and 2', 5' carry pylons
    assert {0, 1, 4, 8, 11} <= owners
    tags = set(check_shape_taxonomy(td.rep).values())
    assert tags == {"I", "L", "⊥"}
    # a one-unit exception pylon exists
    assert any(p.pylon[2] - p.pylon[1] == 1 for p in td.rep.polygons if p.pylon is not None)


def test_flip_gives_t_shapes():
    emb = named("dxw")
    rep = flip_vertical(t_drawer(emb))
    assert verify(rep, emb.graph).valid
    assert "T" in set(check_shape_taxonomy(rep).values())


def test_compaction_c3_idempotent():
    rep = draw_planar(named("c3"))
    assert compact_levels(rep) == rep


def test_compaction_k4_levels():
    rep = draw_planar(named("k4_planar"))
    out = compact_levels(rep)
    assert len({p.y for p in rep.polygons}) <= 4
    assert len({p.y for p in out.polygons}) <= 4


def pylon_sees_its_trapezoids(td, g):
    """Every trapezoid edge {v, c} is a horizontal sight ending on v's pylon."""
    pyl = {p.v: p.pylon for p in td.rep.polygons}
    by_eid = {}
    for s in td.rep.sights:
        by_eid.setdefault(frozenset(s.edge), []).append(s)
    for e, v in td.pylon_edges.items():
        (s,) = by_eid[frozenset(g.edges[e])]
        if s.dir != "h" or pyl[v] is None:
            return False
        x, y0, y1 = pyl[v]
        end = s.lo if s.edge[0] == v else s.hi
        if end != x or not y0 <= s.at <= y1:
            return False
    return True


def test_dxw_pylon_visibility():
    emb = named("dxw")
    assert pylon_sees_its_trapezoids(t_drawing(emb), emb.graph)


@given(instances())
def test_drawers_verify_on_random_instances(inst):
    kind, emb = inst
    rep = DRAW[kind](emb)
    assert rep.mode == MODE_OF[kind]
    assert verify(rep, emb.graph).valid
    assert one_sight_per_edge(rep, emb.graph)
    assert check_area(rep, emb.n)
    assert check_thickness_two(rep)
    check_shape_taxonomy(rep)


@given(instances(kinds=("planar", "ic")))
def test_t_drawer_handles_every_kind(inst):
    _, emb = inst
    rep = t_drawer(emb)
    assert verify(rep, emb.graph).valid
    assert check_area(rep, emb.n, "t_shape")


@given(instances(kinds=("one_planar",)))
def test_t_pylon_visibility(inst):
    _, emb = inst
    td = t_drawing(emb)
    assert pylon_sees_its_trapezoids(td, emb.graph)
    cols = Counter(p.pylon[0] for p in td.rep.polygons if p.pylon is not None)
    assert all(c == 1 for c in cols.values())


@given(instances(kinds=("ic",)))
def test_ic_crossing_sights_meet(inst):
    _, emb = inst
    rep = ic_rv_drawer(emb)
    sight = {frozenset(s.edge): s for s in rep.sights}
    for e1, e2 in emb.crossings:
        a, b = sight[frozenset(emb.graph.edges[e1])], sight[frozenset(emb.graph.edges[e2])]
        h, v = (a, b) if a.dir == "h" else (b, a)
        assert (h.dir, v.dir) == ("h", "v")
        assert h.lo < v.at < h.hi and v.lo < h.at < v.hi


@given(instances())
def test_compaction_keeps_validity(inst):
    kind, emb = inst
    rep = DRAW[kind](emb)
    out = compact_levels(rep, emb.graph)
    assert verify(out, emb.graph).valid
    assert out.bounds[1] <= rep.bounds[1]


def test_generated_instance_is_deterministic():
    a = generate_instance(30, 5, "one_planar")
    b = generate_instance(30, 5, "one_planar")
    assert a.graph.edges == b.graph.edges and a.rotation == b.rotation
