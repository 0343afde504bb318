from __future__ import annotations

from collections import Counter

import networkx as nx
import pytest
from conftest import instances
from hypothesis import given

from visrep.errors import NotICPlanar, WConfigurationPresent
from visrep.generate import generate_instance, named
from visrep.normal_form import (
    augment_planar_maximal,
    build_boxplus,
    kite_contract,
    normal_form,
    planar_skeleton,
    reroute_b_configurations,
    undo_reroutes,
)


def stages(name):
    a0 = augment_planar_maximal(named(name))
    a1 = reroute_b_configurations(a0)
    return a0, a1, build_boxplus(a1)


def test_kite_unchanged_and_classified():
    a0, _, a = stages("k4_kite")
    assert [c.kind for c in a0.classes] == ["kite"]
    assert a.plane.m == named("k4_kite").plane.m


def test_b_configuration_rerouted_into_kite():
    a0, a1, _ = stages("b_config")
    assert [c.kind for c in a0.classes] == ["B"]
    assert [c.kind for c in a1.classes] == ["kite"]
    assert len(a1.reroute_log) == 1


def test_kite_only_embedding_has_empty_reroute_log():
    _, a1, _ = stages("xw6")
    assert a1.reroute_log == ()


def test_w_configuration_untouched():
    a0, a1, _ = stages("w_config")
    assert Counter(c.kind for c in a0.classes) == Counter(c.kind for c in a1.classes)
    assert "W" in {c.kind for c in a1.classes}


def test_three_connected_boxplus_equals_boxtimes():
    a0, _, a = stages("xw6")
    assert a.plane.m == a0.plane.m
    assert a.tree.separation_pairs() == []


def test_dxw_gets_one_copy_of_the_separation_pair_edge():
    _, _, a = stages("dxw")
    assert Counter(a.plane.tags)["copy"] == 1
    assert len(a.tree.separation_pairs()) == 1


def test_skeleton_quadrangles_match_crossings():
    for name, quads in (("k4_kite", 1), ("xw6", 6), ("dxw", 12)):
        a = normal_form(named(name))
        sk = planar_skeleton(a)
        assert len(sk.quad_dart) == quads == len(a.base.crossings)
        assert all(len(sk.plane.faces[sk.plane.face_of[d]]) == 4 for d in sk.quad_dart)


def test_kite_contract_rejects_w_configurations():
    with pytest.raises(WConfigurationPresent):
        kite_contract(normal_form(named("xw6")))


def test_kite_contract_rejects_shared_kite_corners():
    emb = generate_instance(20, 1, "one_planar", gadgets=0)
    if emb.is_ic():
        pytest.skip("instance happens to be IC")
    with pytest.raises((NotICPlanar, WConfigurationPresent)):
        kite_contract(normal_form(emb))


def test_kite_contract_identity_without_kites():
    a = normal_form(named("w4"))
    kc = kite_contract(a)
    assert kc.plane.n == a.n and kc.kites == ()


def test_undo_reroutes_restores_one_copy():
    a = normal_form(named("b_config"))
    u = undo_reroutes(a)
    assert Counter(u.plane.tags)["restored"] == 1
    assert u.plane.euler_ok()
    rest = [e for e, t in enumerate(u.plane.tags) if t == "restored"]
    assert u.origin[rest[0]] == a.reroute_log[0].edge


@given(instances())
def test_boxplus_is_triangulated(inst):
    _, emb = inst
    a = normal_form(emb)
    stuck = {a.plane.face_of[d] for d in a.stuck_faces}
    assert all(len(f) == 3 for i, f in enumerate(a.plane.faces) if i not in stuck)
    assert a.real_edge_count() <= 4 * emb.n - 8


@given(instances())
def test_only_kites_and_w_after_normal_form(inst):
    _, emb = inst
    a = normal_form(emb)
    assert {c.kind for c in a.classes} <= {"kite", "W"}


@given(instances(kinds=("ic",), n_min=8))
def test_contraction_is_planar_and_two_connected(inst):
    _, emb = inst
    kc = kite_contract(normal_form(emb))
    g = nx.Graph(kc.plane.edges)
    g.remove_edges_from(nx.selfloop_edges(g))
    assert nx.check_planarity(g)[0]
    assert g.number_of_nodes() < 3 or nx.is_biconnected(g)


def test_contraction_need_not_be_three_connected():
    # vertex 5 sits in the separating triangle (1, 3, 6) and 1-6 is a kite
    # side; contracting the kite leaves 5 with degree two
    emb = generate_instance(8, 1, "ic")
    kc = kite_contract(normal_form(emb))
    assert kc.kites == ((0, 1, 6, 7),)
    g = nx.Graph(kc.plane.edges)
    assert nx.node_connectivity(g) == 2
    assert g.degree(kc.vertex_of[5]) == 2


@given(instances())
def test_skeleton_faces_are_triangles_or_quadrangles(inst):
    _, emb = inst
    sk = planar_skeleton(normal_form(emb))
    inner = [f for i, f in enumerate(sk.plane.faces) if i != sk.plane.outer_face]
    assert {len(f) for f in inner} <= {3, 4}
    assert sum(len(f) == 4 for f in inner) <= len(emb.crossings)
