"""Constructive drawers: planar bars, IC flat rectangles and T-shapes.

All coordinates are integers from the start: the IC drawer works at twice
the x resolution and the T drawer at three times x and twice y, so every
fractional offset of the construction lands on a grid line.
"""

from __future__ import annotations

from bisect import bisect_right
from collections.abc import Sequence
from dataclasses import dataclass

import networkx as nx

from .errors import (
    CompactionBrokeVisibility,
    DrawingError,
    EdgeNotOnOuterFace,
    NotICPlanar,
    OrderingDeadEnd,
    ValidationError,
)
from .graph import Embedding, PlaneGraph, mirror_embedding
from .normal_form import AugmentedEmbedding, normal_form, planar_skeleton
from .orderings import (
    DualNumbering,
    VertexOrdering,
    classify_faces,
    dual_st_numbering,
    extend_ordering,
    rhomboidal_st_numbering,
    st_number,
)
from .shapes import ShapePolygon, SightSegment, VisibilityRepresentation, mirror_horizontal


def default_st(pg: PlaneGraph) -> tuple[int, int]:
    """s = v1 and t = vn of the outer walk starting at the outer dart."""
    od = pg.outer_dart if pg.outer_dart is not None else pg.faces[pg.outer_face][0]
    walk = pg.faces[pg.face_of[od]]
    i = walk.index(od)
    return pg.tail(od), pg.tail(walk[i - 1])


@dataclass
class _Layout:
    """Mutable drawing state: bars ``[y, x0, x1]`` and per-edge columns."""

    pg: PlaneGraph
    ordering: VertexOrdering
    dual: DualNumbering
    y: list[int]
    bars: list[list[int]]
    edge_x: list[int]
    st_edge: int

    def vertical(self, e: int, eid: int = -1) -> SightSegment:
        u, v = self.pg.edges[e]
        if self.y[u] > self.y[v]:
            u, v = v, u
        return SightSegment((u, v), "v", self.edge_x[e], self.y[u], self.y[v], eid)


def _layout(pg: PlaneGraph, o: VertexOrdering, dual: DualNumbering, y: Sequence[int], sx: int) -> _Layout:
    """Bars on the given levels, spans from the dual numbering scaled by ``sx``."""
    M = dual.m_faces
    bars = []
    for v in range(pg.n):
        if v in (o.s, o.t):
            bars.append([y[v], 0, sx * (M - 1)])
        else:
            bars.append([y[v], sx * dual.left_v[v], sx * (dual.right_v[v] - 1)])
    st_dart = pg.faces[pg.outer_face]
    st_edge = next(d >> 1 for d in st_dart if pg.tail(d) == o.t and pg.head(d) == o.s)
    edge_x = [sx * le for le in dual.left_e]
    edge_x[st_edge] = 0
    return _Layout(pg, o, dual, list(y), bars, edge_x, st_edge)


def _rep(mode: str, lay: _Layout, pylons: dict[int, tuple[int, int, int]],
         sights: list[SightSegment], dropped: list[SightSegment]) -> VisibilityRepresentation:
    polys = tuple(
        ShapePolygon(v, tuple(lay.bars[v]), pylons.get(v)) for v in range(lay.pg.n)
    )
    return VisibilityRepresentation(mode, lay.pg.n, polys, tuple(sights), tuple(dropped))


# ---------------------------------------------------------------------------
# planar


def visibility_drawer(pg: PlaneGraph | Embedding, ordering: VertexOrdering | None = None,
                      dual: DualNumbering | None = None) -> VisibilityRepresentation:
    """Bar visibility drawing of a 2-connected plane graph; one sight per edge."""
    if isinstance(pg, Embedding):
        pg = pg.plane
    if ordering is None:
        s, t = default_st(pg)
        ordering = st_number(pg, s, t)
    if dual is None:
        dual = dual_st_numbering(pg, ordering)
    lay = _layout(pg, ordering, dual, [d - 1 for d in ordering.delta], 1)
    sights = [lay.vertical(e, e) for e in range(pg.m)]
    return _rep("planar", lay, {}, sights, [])


def _augmented_plane(emb: Embedding) -> tuple[AugmentedEmbedding, PlaneGraph, list[int]]:
    aug = normal_form(emb)
    sk = planar_skeleton(aug)
    return aug, sk.plane, list(sk.edge_origin)


def draw_planar(emb: Embedding) -> VisibilityRepresentation:
    """Bar visibility drawing of any connected plane graph.

    The graph is first triangulated; sights of the added edges are dropped.
    """
    if emb.crossings:
        raise ValidationError("planar mode needs a crossing-free embedding")
    if emb.n == 2 and len(emb.graph.edges) == 1:
        bars = (ShapePolygon(0, (0, 0, 0)), ShapePolygon(1, (1, 0, 0)))
        return VisibilityRepresentation("planar", 2, bars, (SightSegment((0, 1), "v", 0, 0, 1, 0),))
    _, pg, origin = _augmented_plane(emb)
    rep = visibility_drawer(pg)
    keep = [s for s in rep.sights if origin[s.eid] >= 0]
    drop = [s for s in rep.sights if origin[s.eid] < 0]
    keep = [SightSegment(s.edge, s.dir, s.at, s.lo, s.hi, origin[s.eid]) for s in keep]
    return VisibilityRepresentation("planar", rep.n, rep.polygons, tuple(keep), tuple(drop))


# ---------------------------------------------------------------------------
# IC planar: flat rectangles


def with_st_edge(pg: PlaneGraph, s: int, t: int) -> PlaneGraph:
    """Add an edge s-t inside the outer face; its dart t->s stays outer."""
    walk = pg.faces[pg.outer_face]
    rot = [list(r) for r in pg.rotation]
    e = pg.m
    for v in (s, t):
        d_out = next(d for d in walk if pg.tail(d) == v)
        i = rot[v].index(d_out >> 1)
        rot[v].insert(i + 1, e)
    pg2 = PlaneGraph(pg.n, list(pg.edges) + [(s, t)], rot, 2 * e + 1, list(pg.tags) + ["aug"])
    if pg2.outer_face is None or not pg2.euler_ok():
        raise DrawingError("could not add the st edge to the outer face")
    return pg2


def _crossing_edge_ids(aug: AugmentedEmbedding) -> list[dict[frozenset[int], int]]:
    g = aug.base.graph
    return [{frozenset(g.edges[e]): e for e in pair} for pair in aug.base.crossings]


def ic_rv_drawer(aug: AugmentedEmbedding | Embedding) -> VisibilityRepresentation:
    """Flat rectangle visibility drawing of an IC-planar embedding.

    Each kite is drawn as a rhomboid whose left and right ends share a level
    one unit apart; the two crossing edges become a horizontal sight between
    them and a vertical sight through the gap.
    """
    if isinstance(aug, Embedding):
        aug = normal_form(aug)
    sk = planar_skeleton(aug)
    rn = rhomboidal_st_numbering(aug)
    o = rn.ordering
    pg = sk.plane
    origin = list(sk.edge_origin)
    if not any({a, b} == {o.s, o.t} for a, b in pg.edges):
        pg = with_st_edge(pg, o.s, o.t)
        origin.append(-1)
    dual = dual_st_numbering(pg, o)
    level = [2 * d for d in o.delta]
    for r in rn.roles:
        level[r.left] = level[r.right] = o.delta[r.left] + o.delta[r.right]
    lay = _layout(pg, o, dual, [lv - 2 for lv in level], 2)
    sights, dropped = [], []
    for e in range(pg.m):
        s = lay.vertical(e, origin[e])
        (sights if origin[e] >= 0 else dropped).append(s)
    ids = _crossing_edge_ids(aug)
    kite_of = {frozenset(a + b): i for i, (a, b) in enumerate(sk.crossing_edges)}
    for r in rn.roles:
        i = kite_of.get(frozenset((r.bottom, r.left, r.right, r.top)))
        if i is None:
            raise NotICPlanar("kite without a crossing")
        f = pg.face_of[sk.quad_dart[i]]
        D = dual.delta_star[f]
        y = lay.y
        if lay.bars[r.left][2] != 2 * D - 2 or lay.bars[r.right][1] != 2 * D:
            raise DrawingError(f"rhomboid {r} does not leave a unit gap")
        sights.append(SightSegment((r.left, r.right), "h", y[r.left], 2 * D - 2, 2 * D,
                                   ids[i][frozenset((r.left, r.right))]))
        sights.append(SightSegment((r.bottom, r.top), "v", 2 * D - 1, y[r.bottom], y[r.top],
                                   ids[i][frozenset((r.bottom, r.top))]))
    return _rep("flat_rectangle", lay, {}, sights, dropped)


# ---------------------------------------------------------------------------
# 1-planar: T-shapes


@dataclass(frozen=True)
class _Rhombus:
    face: int
    v: int
    b: int  # left end
    c: int
    d: int  # right end
    col_b: int
    col_d: int
    bd: int  # edge ids
    vc: int


class _RhombusConflict(Exception):
    def __init__(self, rhombi: list[_Rhombus]) -> None:
        super().__init__(f"{len(rhombi)} rhombi have pylons on both ends")
        self.rhombi = rhombi


def _assign_rhombus_pylons(rhombi: Sequence[_Rhombus], busy: set[int], y: Sequence[int],
                           combinable: dict[int, int] | None = None) -> tuple[dict[int, int], dict[int, int]]:
    """Pick for every rhombus the end that carries its pylon, at most one
    pylon per vertex.  The lower end is preferred; a matching resolves the
    rest.  A rhombus left over may share the T pylon of its lower end if
    ``combinable[end]`` bounds that vertex's sights below the rhombus top.

    Returns (rhombus -> end, end -> rhombus for shared pylons).
    """
    owner: dict[int, int] = {}
    taken = set(busy)
    complete = True
    for i, r in enumerate(rhombi):
        lo, hi = (r.b, r.d) if y[r.b] < y[r.d] else (r.d, r.b)
        u = lo if lo not in taken else hi if hi not in taken else None
        if u is None:
            complete = False
            break
        owner[i] = u
        taken.add(u)
    if complete:
        return owner, {}
    g = nx.Graph()
    tops = [("r", i) for i in range(len(rhombi))]
    g.add_nodes_from(tops)
    for i, r in enumerate(rhombi):
        for u in (r.b, r.d):
            if u not in busy:
                g.add_edge(("r", i), ("v", u))
    match = nx.bipartite.hopcroft_karp_matching(g, top_nodes=tops)
    owner = {i: match[("r", i)][1] for i in range(len(rhombi)) if ("r", i) in match}
    shared: dict[int, int] = {}
    missing = []
    for i, r in enumerate(rhombi):
        if i in owner:
            continue
        lo = r.b if y[r.b] < y[r.d] else r.d
        limit = (combinable or {}).get(lo)
        if limit is not None and lo not in shared and limit < y[r.c]:
            owner[i] = lo
            shared[lo] = i
        else:
            missing.append(r)
    if missing:
        raise _RhombusConflict(missing)
    return owner, shared


def _flip_chains(o: VertexOrdering, rhombi: Sequence[_Rhombus]) -> VertexOrdering:
    """Reverse the chain that created each rhombus, turning it into a trapezoid."""
    flip = set()
    for r in rhombi:
        for k, p in enumerate(o.paths or ()):
            if k > 0 and len(p) == 2 and r.c in p and (r.b in p or r.d in p):
                flip.add(k)
    if not flip:
        raise DrawingError(f"{len(rhombi)} rhombi need a pylon on an end that already has one")
    paths = [p[::-1] if k in flip else p for k, p in enumerate(o.paths)]
    return _reordered(o, paths)


def _reordered(o: VertexOrdering, paths: Sequence[tuple[int, ...]]) -> VertexOrdering:
    from .orderings import ordering_from_order

    return ordering_from_order([v for p in paths for v in p], list(paths), o.steps)


@dataclass(frozen=True)
class _Trap:
    c: int
    col: int
    edge: int


@dataclass
class _TState:
    """Pylon site (index into the candidates, best first) and the set of
    c's that get a short pylon, for one bottom vertex."""

    site: int = 0
    short: frozenset[int] = frozenset()


@dataclass(frozen=True)
class TDrawing:
    """A T-drawer result plus, for every trapezoid crossing edge id, the
    bottom vertex whose pylon is meant to see it."""

    rep: VisibilityRepresentation
    pylon_edges: dict[int, int]


def t_drawer(aug: AugmentedEmbedding | Embedding, max_rounds: int = 60) -> VisibilityRepresentation:
    """⊥-shape drawing of a 1-planar embedding; see t_drawing."""
    return t_drawing(aug, max_rounds).rep


def t_drawing(aug: AugmentedEmbedding | Embedding, max_rounds: int = 60) -> TDrawing:
    """⊥-shape visibility drawing of a 1-planar embedding.

    Grid: x scaled by 3 and y by 2.  The strip of face f (dual number D) has
    the free columns 3D-2 and 3D-1.  Left-trapezoid (v,b,c,d): b's bar grows
    to 3D-2 and sees d there; v's pylon may use 3D-1.  Right-trapezoids
    mirror this.  Rhombus (v,b,c,d): one of b, d grows an L pylon at the
    column on its side up or down to the other's level; {v,c} uses the other
    column.  Each bottom vertex v of trapezoids gets one pylon, first in the
    trapezoid with the highest c, reaching every c by a horizontal sight.

    Each attempt is certified by the verifier.  A rhombus whose two ends
    already carry pylons has its chain reversed.  A blocked {v,c} sight is
    first lifted onto a one-unit pylon of c, then v's pylon moves to the
    next trapezoid.  If that fails, the leftish ordering is recomputed from
    another outer dart, and then on the mirrored embedding.
    """
    given = aug if isinstance(aug, AugmentedEmbedding) else None
    base = aug.base if given is not None else aug
    errors: list[str] = []
    for mirrored in (False, True):
        if mirrored:
            a = normal_form(mirror_embedding(base))
        else:
            a = given if given is not None else normal_form(base)
        sk = planar_skeleton(a)
        root = a.tree.nodes[a.tree.root].piece
        first = root.outer_dart
        darts = [first] + [d for d in root.faces[root.face_of[first]] if d != first]
        for d in darts:
            try:
                o = extend_ordering(a.tree, root_outer_dart=d)
                rep, traps = _t_search(a, sk, o, max_rounds)
            except (DrawingError, OrderingDeadEnd, EdgeNotOnOuterFace) as ex:
                errors.append(str(ex))
                continue
            pe = {t.edge: v for v, items in traps.items() for t in items}
            return TDrawing(mirror_horizontal(rep) if mirrored else rep, pe)
    raise DrawingError(f"T drawer found no pylon placement: {errors[0] if errors else ''}")


def _t_search(aug: AugmentedEmbedding, sk, o: VertexOrdering,
              max_rounds: int) -> tuple[VisibilityRepresentation, dict[int, list[_Trap]]]:
    from .verifier import verify

    states: dict[int, _TState] = {}
    last = None
    for _ in range(max_rounds):
        try:
            rep, traps = _t_attempt(aug, sk, o, states)
        except _RhombusConflict as rc:
            o = _flip_chains(o, rc.rhombi)
            states.clear()
            continue
        report = verify(rep, aug.base.graph)
        if report.valid:
            return rep, traps
        last = report
        if not _advance(report, traps, states):
            break
    detail = "; ".join(f"{v.kind} {v.edge}" for v in (last.violations[:3] if last else []))
    raise DrawingError(f"could not place pylons: {detail}")


def _advance(report, traps: dict[int, list[_Trap]], states: dict[int, _TState]) -> bool:
    """Move the pylon configuration of one vertex: the owner of the first
    failing {v,c} sight, else the first blocking pylon owner."""
    owner = {}
    for v, items in traps.items():
        for t in items:
            owner[frozenset((v, t.c))] = v
    target, cs = None, set()
    for viol in report.violations:
        key = frozenset(viol.edge) if viol.edge else None
        if key in owner:
            v = owner[key]
            if target is None:
                target = v
            if v == target:
                cs.add(next(iter(key - {v})))
    if target is None:
        target = next((x.blocker for x in report.violations if x.blocker in traps), None)
    if target is None:
        return False
    st = states.setdefault(target, _TState())
    if cs - st.short:
        st.short = st.short | cs
        return True
    if st.site + 1 < len(traps[target]):
        st.site += 1
        st.short = frozenset()
        return True
    return False


def _t_attempt(aug: AugmentedEmbedding, sk, o: VertexOrdering,
               states: dict[int, _TState]) -> tuple[VisibilityRepresentation, dict[int, list[_Trap]]]:
    pg = sk.plane
    origin = sk.edge_origin
    dual = dual_st_numbering(pg, o)
    lay = _layout(pg, o, dual, [2 * (d - 1) for d in o.delta], 3)
    y, bars = lay.y, lay.bars
    sights, dropped = [], []
    for e in range(pg.m):
        s = lay.vertical(e, origin[e])
        (sights if origin[e] >= 0 else dropped).append(s)
    if not sk.quad_dart:
        return _rep("t_shape", lay, {}, sights, dropped), {}
    ids = _crossing_edge_ids(aug)
    fcs = {fc.face: fc for fc in classify_faces(pg, o)}
    outer = pg.outer_face
    M = dual.m_faces
    pylons: dict[int, tuple[int, int, int]] = {}
    traps: dict[int, list[_Trap]] = {}
    rhombi: list[_Rhombus] = []
    for i, dq in enumerate(sk.quad_dart):
        f = pg.face_of[dq]
        eid = ids[i]
        if f == outer:
            _outer_w(pg, o, lay, M, eid, pylons, sights)
            continue
        fc = fcs[f]
        D = dual.delta_star[f]
        cl, cr = 3 * D - 2, 3 * D - 1
        v, top = fc.bottom, fc.top
        if fc.kind == "left_trapezoid":
            b, c = fc.left_chain
            bars[b][2] = cl
            sights.append(SightSegment((b, top), "v", cl, y[b], y[top], eid[frozenset((b, top))]))
            traps.setdefault(v, []).append(_Trap(c, cr, eid[frozenset((v, c))]))
        elif fc.kind == "right_trapezoid":
            b, c = fc.right_chain
            bars[b][1] = cr
            sights.append(SightSegment((b, top), "v", cr, y[b], y[top], eid[frozenset((b, top))]))
            traps.setdefault(v, []).append(_Trap(c, cl, eid[frozenset((v, c))]))
        elif fc.kind == "rhomboid":
            b, d = fc.left_chain[0], fc.right_chain[0]
            rhombi.append(_Rhombus(f, v, b, top, d, cl, cr, eid[frozenset((b, d))], eid[frozenset((v, top))]))
        else:
            raise DrawingError(f"crossing {i} lies in a {fc.kind} face")
    for items in traps.values():
        items.sort(key=lambda t: -o.delta[t.c])
    short = {c for v in traps for c in states.get(v, _TState()).short}
    reach = {
        v: max(y[t.c] + (t.c in states.get(v, _TState()).short) for t in items)
        for v, items in traps.items() if v not in pylons
    }
    owner, shared = _assign_rhombus_pylons(rhombi, set(traps) | set(pylons) | short, y, reach)
    site_col: dict[int, int] = {}
    for i, r in enumerate(rhombi):
        p = owner[i]
        q = r.d if p == r.b else r.b
        col, other = (r.col_b, r.col_d) if p == r.b else (r.col_d, r.col_b)
        if p == r.b:
            bars[p][2] = col
        else:
            bars[p][1] = col
        if shared.get(p) == i:
            site_col[p] = col
            pylons[p] = (col, y[p], max(y[q], reach[p]))
        else:
            pylons[p] = (col, min(y[p], y[q]), max(y[p], y[q]))
        lo_x, hi_x = sorted((col, bars[q][1] if p == r.b else bars[q][2]))
        sights.append(SightSegment((r.b, r.d), "h", y[q], lo_x, hi_x, r.bd))
        sights.append(SightSegment((r.v, r.c), "v", other, y[r.v], y[r.c], r.vc))
    pending = []
    for v, items in traps.items():
        st = states.get(v, _TState())
        if v in site_col:
            col = site_col[v]
        else:
            col = items[st.site].col
            pylons[v] = (col, y[v], reach[v])
        for t in items:
            if t.c in st.short:
                pending.append((v, t, col))
            elif bars[t.c][2] < col:
                sights.append(SightSegment((t.c, v), "h", y[t.c], bars[t.c][2], col, t.edge))
            elif bars[t.c][1] > col:
                sights.append(SightSegment((v, t.c), "h", y[t.c], col, bars[t.c][1], t.edge))
            else:
                raise DrawingError(f"pylon of {v} stands under the bar of {t.c}")
    for v, t, col in pending:
        _short_pylon(v, t.c, col, t.edge, lay, pylons, sights)
    return _rep("t_shape", lay, pylons, sights, dropped), traps


def _short_pylon(v: int, c: int, col: int, e: int, lay: _Layout,
                 pylons: dict, sights: list) -> None:
    """Level y(c) is taken: c gets a one-unit pylon at the bar end facing
    v's pylon and {v,c} runs along its top."""
    y, bars = lay.y, lay.bars
    x = bars[c][2] if bars[c][2] < col else bars[c][1]
    if c in pylons:
        # no room for a second pylon: keep the plain sight, the verifier decides
        lo, hi = sorted((x, col))
        sights.append(SightSegment((c, v) if x < col else (v, c), "h", y[c], lo, hi, e))
        return
    pylons[c] = (x, y[c], y[c] + 1)
    for k, s in enumerate(sights):
        if s.dir == "v" and s.at == x and s.lo == y[c] and s.edge[0] == c:
            sights[k] = SightSegment(s.edge, "v", x, y[c] + 1, s.hi, s.eid)
    lo, hi = sorted((x, col))
    edge = (c, v) if x < col else (v, c)
    sights.append(SightSegment(edge, "h", y[c] + 1, lo, hi, e))


def _outer_w(pg: PlaneGraph, o: VertexOrdering, lay: _Layout, M: int,
             eid: dict[frozenset[int], int], pylons: dict, sights: list) -> None:
    """Crossing in the outer quadrangle t, s, p, q: drawn right of everything.

    t hangs a pylon at 3M-1 down to p; {s,q} is vertical at 3M-2.
    """
    walk = [pg.tail(d) for d in pg.faces[pg.outer_face]]
    k = walk.index(o.s)
    s, p, q, t = (walk[(k + j) % 4] for j in range(4))
    if t != o.t:
        raise DrawingError("outer quadrangle does not contain the st edge")
    y, bars = lay.y, lay.bars
    c1, c2 = 3 * M - 2, 3 * M - 1
    bars[s][2] = max(bars[s][2], c1)
    bars[q][2] = max(bars[q][2], c1)
    bars[t][2] = max(bars[t][2], c2)
    pylons[t] = (c2, y[p], y[t])
    sights.append(SightSegment((s, q), "v", c1, y[s], y[q], eid[frozenset((s, q))]))
    sights.append(SightSegment((p, t), "h", y[p], bars[p][2], c2, eid[frozenset((p, t))]))


# ---------------------------------------------------------------------------
# compaction


def compact_levels(rep: VisibilityRepresentation, g=None,
                   strict: bool = False) -> VisibilityRepresentation:
    """Lower every bar to its longest-path level.

    Bars sharing a level move together; any other y coordinate keeps its
    offset above the nearest bar level below it.  The order of every pair of
    horizontal features that share a column, and of horizontal features
    against the ends of vertical ones they cross, is kept.  The result is
    re-verified; on failure the input is returned (or raised when strict).
    """
    from .graph import Graph
    from .verifier import verify

    if not rep.polygons:
        return rep
    levels = sorted({p.bar[0] for p in rep.polygons})
    gidx = {y: i for i, y in enumerate(levels)}

    def group(y: int) -> tuple[int, int]:
        i = max(0, bisect_right(levels, y) - 1)
        return i, y - levels[i]

    horiz = [(p.bar[0], p.bar[1], p.bar[2]) for p in rep.polygons]
    horiz += [(s.at, s.lo, s.hi) for s in rep.sights if s.dir == "h"]
    vert = [p.pylon for p in rep.polygons if p.pylon is not None]
    vert += [(s.at, s.lo, s.hi) for s in rep.sights if s.dir == "v"]
    dag = nx.DiGraph()
    dag.add_nodes_from(range(len(levels)))

    def order(a: int, b: int) -> None:
        ga, gb = group(a)[0], group(b)[0]
        if a < b and ga != gb:
            dag.add_edge(ga, gb)
        elif b < a and ga != gb:
            dag.add_edge(gb, ga)

    cols: dict[int, list[int]] = {}
    for y, x0, x1 in horiz:
        for x in range(x0, x1 + 1):
            cols.setdefault(x, []).append(y)
    for ys in cols.values():
        ys = sorted(set(ys))
        for a, b in zip(ys, ys[1:]):
            order(a, b)
    for x, y0, y1 in vert:
        for y in sorted(set(cols.get(x, []))):
            order(y, y0)
            order(y, y1)
    new = {}
    for v in nx.topological_sort(dag):
        new[v] = max((new[u] + 1 for u in dag.predecessors(v)), default=0)
    step = 1 + max(group(y)[1] for y, _, _ in horiz + [(a, 0, 0) for _, a, b in vert] + [(b, 0, 0) for _, a, b in vert])

    def ny(y: int) -> int:
        i, off = group(y)
        return new[i] * step + off

    polys = tuple(
        ShapePolygon(p.v, (ny(p.bar[0]), p.bar[1], p.bar[2]),
                     None if p.pylon is None else (p.pylon[0], ny(p.pylon[1]), ny(p.pylon[2])))
        for p in rep.polygons
    )

    def move(s: SightSegment) -> SightSegment:
        if s.dir == "h":
            return SightSegment(s.edge, "h", ny(s.at), s.lo, s.hi, s.eid)
        return SightSegment(s.edge, "v", s.at, ny(s.lo), ny(s.hi), s.eid)

    out = VisibilityRepresentation(rep.mode, rep.n, polys, tuple(map(move, rep.sights)),
                                   tuple(map(move, rep.dropped)), rep.flipped)
    if g is None:
        g = Graph(rep.n, tuple(s.edge for s in rep.sights))
    report = verify(out, g)
    if report.valid:
        return out
    if strict:
        raise CompactionBrokeVisibility(f"{len(report.violations)} violations after compaction")
    return rep
