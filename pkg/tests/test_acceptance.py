"""Acceptance criteria 1-9.  Each test prints one PASS/FAIL line."""

from __future__ import annotations

import random
import time
from collections import Counter
from functools import lru_cache

import networkx as nx
import pytest
from oracles import contour_replay, face_classes_oracle, is_st_numbering, scan_oracle
from reps import random_small_rep

from visrep.drawers import default_st, draw_planar, ic_rv_drawer, t_drawer, t_drawing
from visrep.errors import DrawingError
from visrep.generate import KINDS, generate_instance, named
from visrep.graph import PlaneGraph
from visrep.normal_form import kite_contract, normal_form, planar_skeleton
from visrep.orderings import (
    check_bitonic_tree,
    classify_faces,
    extend_ordering,
    rhomboidal_st_numbering,
    st_number,
)
from visrep.verifier import check_area, check_thickness_two, verify

DRAW = {"planar": draw_planar, "ic": ic_rv_drawer, "one_planar": t_drawer}
SEEDS = range(200)


def corpus_n(seed: int) -> int:
    """Spread seeds 0..199 over n = 8..200."""
    return 8 + seed * 192 // 199


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
    return emit


@lru_cache(maxsize=None)
def corpus():
    """(kind, seed, embedding, representation, t_drawing or None) and the
    wall-clock time for generating, drawing and verifying everything."""
    start = time.perf_counter()
    items, failures = [], []
    for kind in KINDS:
        for seed in SEEDS:
            emb = generate_instance(corpus_n(seed), seed, kind)
            td = t_drawing(emb) if kind == "one_planar" else None
            rep = td.rep if td else DRAW[kind](emb)
            ok = verify(rep, emb.graph).valid and check_thickness_two(rep)
            if not ok:
                failures.append((kind, seed))
            items.append((kind, seed, emb, rep, td))
    return items, failures, time.perf_counter() - start


def test_criterion_1_named_instances(report):
    cases = [("k4_kite", ic_rv_drawer), ("xw6", t_drawer), ("dxw", t_drawer),
             ("c3", draw_planar), ("k4_planar", draw_planar), ("w4", draw_planar)]
    bad = []
    slowest = 0.0
    for name, draw in cases:
        emb = named(name)
        t0 = time.perf_counter()
        rep = draw(emb)
        ok = verify(rep, emb.graph).valid
        dt = time.perf_counter() - t0
        slowest = max(slowest, dt)
        one_each = Counter(frozenset(s.edge) for s in rep.sights) == Counter(frozenset(e) for e in emb.graph.edges)
        if not (ok and one_each and dt < 1.0):
            bad.append(name)
    report(1, not bad, f"{len(cases) - len(bad)}/{len(cases)} named instances certified, slowest {slowest:.3f}s")
    assert not bad


def test_criterion_2_area(report):
    items, _, _ = corpus()
    reps = [(emb.n, rep) for _, _, emb, rep, _ in items]
    for name, draw in (("k4_kite", ic_rv_drawer), ("xw6", t_drawer), ("dxw", t_drawer), ("w_config", t_drawer)):
        emb = named(name)
        reps.append((emb.n, draw(emb)))
    over = [(n, rep.mode, rep.bounds) for n, rep in reps if not check_area(rep, n)]
    report(2, not over, f"{len(reps) - len(over)}/{len(reps)} drawings within the area bound")
    assert not over


def test_criterion_3_random_corpus(report):
    items, failures, elapsed = corpus()
    ok = not failures and elapsed < 60.0
    per_kind = Counter(kind for kind, *_ in items)
    report(3, ok, f"{len(items) - len(failures)}/{len(items)} verified with thickness two "
                  f"({dict(per_kind)}), {elapsed:.1f}s")
    assert not failures
    assert elapsed < 60.0


def test_criterion_4_orderings(report):
    items, _, _ = corpus()
    st_bad, bitonic_bad, class_bad, class_checked = [], [], [], 0
    for kind, seed, emb, _, _ in items:
        aug = normal_form(emb)
        pg = planar_skeleton(aug).plane
        po, od = {}, {}
        o = extend_ordering(aug.tree, po, outer_darts=od)
        emitted = [o, st_number(pg, *default_st(pg))]
        if kind == "ic":
            emitted.append(rhomboidal_st_numbering(aug).ordering)
        if not all(is_st_numbering(pg.n, pg.edges, x.delta) for x in emitted):
            st_bad.append((kind, seed))
        if check_bitonic_tree(aug.tree, po):
            bitonic_bad.append((kind, seed))
        if emb.n <= 40:
            class_checked += 1
            for idx, lo in po.items():
                pc = aug.tree.nodes[idx].piece
                piece = PlaneGraph(pc.n, pc.edges, pc.rotation, od[idx], pc.tags)
                got = {fc.face: (fc.kind, *fc.support) for fc in classify_faces(piece, lo)}
                walks = {f: [piece.tail(d) for d in w] for f, w in enumerate(piece.faces)
                         if f != piece.outer_face}
                if got != face_classes_oracle(walks, lo.delta, contour_replay(piece.edges, lo.paths)):
                    class_bad.append((kind, seed))
                    break
    ok = not (st_bad or bitonic_bad or class_bad)
    report(4, ok, f"st-invalid {len(st_bad)}, bitonic violations {len(bitonic_bad)}, "
                  f"classification mismatches {len(class_bad)}/{class_checked} (n <= 40)")
    assert ok


def test_criterion_5_normal_form(report):
    items, _, _ = corpus()
    tri_bad, dense, stuck, ic_total, not_planar, not_3conn = [], [], 0, 0, [], []
    for kind, seed, emb, _, _ in items:
        aug = normal_form(emb)
        skip = {aug.plane.face_of[d] for d in aug.stuck_faces}
        stuck += len(skip)
        if any(len(f) != 3 for i, f in enumerate(aug.plane.faces) if i not in skip):
            tri_bad.append((kind, seed))
        if aug.real_edge_count() > 4 * emb.n - 8:
            dense.append((kind, seed))
        if kind == "ic":
            ic_total += 1
            g = nx.Graph(kite_contract(aug).plane.edges)
            g.remove_edges_from(nx.selfloop_edges(g))
            if not nx.check_planarity(g)[0]:
                not_planar.append(seed)
            elif g.number_of_nodes() >= 4 and nx.node_connectivity(g) < 3:
                not_3conn.append(seed)
    ok = not (tri_bad or dense or not_planar or not_3conn)
    report(5, ok, f"untriangulated {len(tri_bad)} (stuck faces {stuck}), over 4n-8 {len(dense)}, "
                  f"IC contraction non-planar {len(not_planar)}/{ic_total}, "
                  f"not 3-connected {len(not_3conn)}/{ic_total}")
    assert ok


def test_criterion_6_rhomboids(report):
    items, _, _ = corpus()
    kites = rhomboids = 0
    bad = []
    for kind, seed, emb, _, _ in items:
        if kind != "ic":
            continue
        aug = normal_form(emb)
        pg = planar_skeleton(aug).plane
        rn = rhomboidal_st_numbering(aug)
        faces = {frozenset((fc.bottom, fc.top, *fc.left_chain, *fc.right_chain)): fc.kind
                 for fc in classify_faces(pg, rn.ordering) if fc.kind != "triangle"}
        for r in rn.roles:
            kites += 1
            if faces.get(frozenset((r.bottom, r.left, r.right, r.top))) == "rhomboid":
                rhomboids += 1
            else:
                bad.append(seed)
    report(6, not bad, f"{rhomboids}/{kites} kites are rhomboids")
    assert not bad


def test_criterion_7_pylon_visibility(report):
    items, _, _ = corpus()
    checked = edges = 0
    bad = []
    for kind, seed, emb, _, td in items:
        if td is None:
            continue
        checked += 1
        pyl = {p.v: p.pylon for p in td.rep.polygons}
        sights = {frozenset(s.edge): s for s in td.rep.sights}
        for e, v in td.pylon_edges.items():
            edges += 1
            s = sights[frozenset(emb.graph.edges[e])]
            end = s.lo if s.edge[0] == v else s.hi
            p = pyl[v]
            if s.dir != "h" or p is None or end != p[0] or not p[1] <= s.at <= p[2]:
                bad.append((seed, e))
    report(7, not bad, f"{edges - len(bad)}/{edges} trapezoid edges seen from the pylon "
                       f"of their bottom vertex over {checked} t-mode drawings")
    assert not bad


def pipeline_seconds(n: int) -> float:
    emb = generate_instance(n, 0, "one_planar")
    t0 = time.perf_counter()
    rep = t_drawer(emb)
    assert verify(rep, emb.graph).valid
    return time.perf_counter() - t0


def test_criterion_8_scaling(report):
    try:
        small = pipeline_seconds(5000)
        big = pipeline_seconds(10000)
    except DrawingError as ex:
        report(8, False, f"t drawer failed: {ex}")
        raise
    ratio = big / small
    report(8, ratio <= 4.0, f"n=5000 {small:.2f}s, n=10000 {big:.2f}s, ratio {ratio:.2f}")
    assert ratio <= 4.0


def test_criterion_9_verifier_self_test(report):
    items, _, _ = corpus()
    samples = []
    for _, _, emb, rep, _ in items:
        w, h = rep.bounds
        if w <= 12 and h <= 12:
            samples.append((rep, emb.graph))
    for name, draw in (("c3", draw_planar), ("k4_planar", draw_planar), ("w4", draw_planar),
                       ("k4_kite", ic_rv_drawer)):
        emb = named(name)
        samples.append((draw(emb), emb.graph))
    rng = random.Random(2024)
    samples += [random_small_rep(rng) for _ in range(3000)]
    disagree = sum(verify(rep, g).valid != (scan_oracle(rep, g.edges) == []) for rep, g in samples)
    valid = sum(verify(rep, g).valid for rep, g in samples)
    report(9, disagree == 0, f"{len(samples) - disagree}/{len(samples)} agree "
                             f"({valid} valid, {len(samples) - valid} invalid)")
    assert disagree == 0
