from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import scan_oracle
from reps import random_polygon, random_small_rep

from visrep.drawers import draw_planar, ic_rv_drawer, t_drawer
from visrep.errors import ShapeOutOfMode
from visrep.generate import named
from visrep.graph import Graph
from visrep.shapes import ShapePolygon, SightSegment, VisibilityRepresentation
from visrep.verifier import (
    area_bound,
    check_area,
    check_shape_taxonomy,
    check_thickness_two,
    shape_tag,
    verify,
)

K2 = Graph(2, ((0, 1),))


def k2_rep(*extra, mode="planar"):
    polys = (ShapePolygon(0, (0, 0, 2)), ShapePolygon(1, (4, 0, 2))) + extra
    return VisibilityRepresentation(mode, len(polys), polys, (SightSegment((0, 1), "v", 1, 0, 4),))


def test_k2_valid():
    assert verify(k2_rep(), K2).valid


def test_third_bar_blocks():
    rep = k2_rep(ShapePolygon(2, (2, 1, 1)))
    report = verify(rep, Graph(3, ((0, 1),)))
    assert "blocked" in report.kinds()
    assert any(v.blocker == 2 for v in report.violations)


def test_pylon_blocks_horizontal_sight():
    polys = (ShapePolygon(0, (0, 0, 0)), ShapePolygon(1, (0, 4, 4)), ShapePolygon(2, (-1, 2, 2), (2, -1, 1)))
    rep = VisibilityRepresentation("t_shape", 3, polys, (SightSegment((0, 1), "h", 0, 0, 4),))
    assert not verify(rep, Graph(3, ((0, 1),))).valid


def test_missing_sight_reported():
    rep = VisibilityRepresentation("planar", 2, k2_rep().polygons, ())
    assert not verify(rep, K2).valid


def test_sight_must_anchor_on_its_endpoints():
    rep = VisibilityRepresentation("planar", 2, k2_rep().polygons, (SightSegment((0, 1), "v", 5, 0, 4),))
    assert not verify(rep, K2).valid


def test_overlapping_polygons_reported():
    polys = (ShapePolygon(0, (0, 0, 2)), ShapePolygon(1, (0, 2, 4)))
    rep = VisibilityRepresentation("planar", 2, polys, (SightSegment((0, 1), "h", 0, 2, 2),))
    assert not verify(rep, K2).valid


def test_crossing_sights_are_allowed():
    emb = named("k4_kite")
    assert verify(ic_rv_drawer(emb), emb.graph).valid


def test_shape_tags():
    assert shape_tag(ShapePolygon(0, (0, 0, 4))) == "I"
    assert shape_tag(ShapePolygon(0, (0, 0, 4), (0, 0, 3))) == "L"
    assert shape_tag(ShapePolygon(0, (0, 0, 4), (2, 0, 3))) == "⊥"
    assert shape_tag(ShapePolygon(0, (3, 0, 4), (2, 0, 3))) == "T"


def test_taxonomy_rejects_pylons_in_flat_mode():
    rep = k2_rep(ShapePolygon(2, (8, 0, 4), (2, 8, 9)), mode="flat_rectangle")
    with pytest.raises(ShapeOutOfMode):
        check_shape_taxonomy(rep)


def test_taxonomy_rejects_t_in_unflipped_drawing():
    rep = k2_rep(ShapePolygon(2, (9, 0, 4), (2, 8, 9)), mode="t_shape")
    with pytest.raises(ShapeOutOfMode):
        check_shape_taxonomy(rep)


def test_area_examples():
    rep = draw_planar(named("c3"))
    assert check_area(rep, 3)
    assert area_bound(8, "t_shape") == (33, 16)
    for mode in ("planar", "flat_rectangle", "t_shape"):
        w, h = area_bound(3, mode)
        assert w > 0 and h > 0
    emb = named("xw6")
    assert check_area(t_drawer(emb), 8)


def test_thickness_two_examples():
    assert check_thickness_two(draw_planar(named("w4")))
    assert check_thickness_two(ic_rv_drawer(named("k4_kite")))
    assert check_thickness_two(t_drawer(named("dxw")))


@given(st.randoms(use_true_random=False))
def test_verify_agrees_with_scan_oracle(rng):
    rep, g = random_small_rep(rng)
    assert verify(rep, g).valid == (scan_oracle(rep, g.edges) == [])


@given(st.randoms(use_true_random=False))
def test_adding_a_polygon_never_removes_a_violation(rng):
    rep, g = random_small_rep(rng)
    before = {(v.kind, v.edge) for v in verify(rep, g).violations}
    extra = random_polygon(rng, rep.n)
    bigger = VisibilityRepresentation(rep.mode, rep.n + 1, rep.polygons + (extra,), rep.sights)
    after = {(v.kind, v.edge) for v in verify(bigger, Graph(rep.n + 1, g.edges)).violations}
    assert before <= after


def test_scan_oracle_agreement_bulk():
    rng = random.Random(7)
    for _ in range(2000):
        rep, g = random_small_rep(rng)
        assert verify(rep, g).valid == (scan_oracle(rep, g.edges) == [])
