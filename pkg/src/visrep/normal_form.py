"""Normal form of 1-planar embeddings.

Stages (all pure):

* :func:`augment_planar_maximal` closes every crossing corner whose kite side
  is absent and triangulates the remaining faces (G⊠);
* :func:`reroute_b_configurations` moves an existing planar edge into a
  corner that needs it (B-configuration -> kite);
* :func:`build_boxplus` closes the remaining corners with copies of the
  separation-pair edge (G⊞) and builds the decomposition tree;
* :func:`planar_skeleton` drops the crossing pairs (G□);
* :func:`kite_contract` contracts kites of IC-planar inputs (G•).

Everything operates on the planarization; dummy ids are ``n + i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from .errors import NotICPlanar, ValidationError, WConfigurationPresent
from .graph import Embedding, PlaneGraph


@dataclass(frozen=True)
class CrossingClass:
    pair: int
    kind: str  # "kite" | "B" | "W"
    boundary: tuple[int, int, int, int]
    outer: bool = False


@dataclass(frozen=True)
class RerouteEntry:
    edge: int
    ends: tuple[int, int]
    old_after: tuple[int, int]  # edge ids preceding it clockwise at each end
    crossing: int


@dataclass(frozen=True)
class TreeNode:
    """A piece of G□ between parallel edges; ``pair`` is None for the root."""

    vertices: tuple[int, ...]
    pair: tuple[int, int] | None
    rep_edge: int | None
    piece: PlaneGraph
    local_to_global: tuple[int, ...]
    children: tuple[int, ...] = ()
    parallel: tuple[tuple[int, int], ...] = ()  # pairs bounding this piece
    edge_to_global: tuple[int, ...] = ()  # piece edge -> G□ edge


@dataclass(frozen=True)
class DecompositionTree:
    nodes: tuple[TreeNode, ...]
    root: int = 0

    def separation_pairs(self) -> list[tuple[int, int]]:
        return [n.pair for n in self.nodes if n.pair is not None]


@dataclass(frozen=True, eq=False)
class AugmentedEmbedding:
    base: Embedding
    stage: str
    plane: PlaneGraph  # current planarization (G⊠ or G⊞)
    origin: tuple[int, ...]  # planarization edge -> original edge id or -1
    classes: tuple[CrossingClass, ...]
    blocked: tuple[tuple[int, int], ...] = ()  # (crossing, corner index)
    reroute_log: tuple[RerouteEntry, ...] = ()
    stuck_faces: tuple[int, ...] = ()  # dart ids of untriangulable quads
    tree: DecompositionTree | None = None
    g_boxtimes: PlaneGraph | None = None
    outer_note: str = ""

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def num_crossings(self) -> int:
        return len(self.base.crossings)

    def real_edge_count(self) -> int:
        """Edges of the un-planarized graph (each crossing pair counts two)."""
        halves = sum(1 for t in self.plane.tags if t == "crossing")
        return self.plane.m - halves // 2


# ---------------------------------------------------------------------------
# mutable builder


class _Builder:
    def __init__(self, pg: PlaneGraph, n_real: int, origin: Sequence[int]) -> None:
        self.n_real = n_real
        self.n = pg.n
        self.edges = list(pg.edges)
        self.tags = list(pg.tags)
        self.origin = list(origin)
        self.rot = [list(r) for r in pg.rotation]
        self.outer_dart = pg.outer_dart
        self.pairs: dict[frozenset[int], list[int]] = {}
        for e, (u, v) in enumerate(self.edges):
            if u < n_real and v < n_real:
                self.pairs.setdefault(frozenset((u, v)), []).append(e)
        # crossing pairs make their endpoints adjacent as well
        self.crossing_pairs: set[frozenset[int]] = set()
        for x in range(n_real, self.n):
            a, b, c, d = (self.other(e, x) for e in self.rot[x])
            self.crossing_pairs.add(frozenset((a, c)))
            self.crossing_pairs.add(frozenset((b, d)))

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def adjacent(self, a: int, b: int) -> bool:
        key = frozenset((a, b))
        return bool(self.pairs.get(key)) or key in self.crossing_pairs

    def pred(self, v: int, e: int) -> int:
        r = self.rot[v]
        return r[r.index(e) - 1]

    def out_dart(self, v: int, e: int) -> int:
        return 2 * e if self.edges[e][0] == v else 2 * e + 1

    def head(self, d: int) -> int:
        return self.edges[d >> 1][1 - (d & 1)]

    def next_dart(self, d: int) -> int:
        v = self.head(d)
        return self.out_dart(v, self.pred(v, d >> 1))

    def add_edge(self, a: int, a_after: int, b: int, b_after: int, tag: str) -> int:
        """New edge a-b inserted clockwise right after ``a_after`` at a and ``b_after`` at b."""
        e = len(self.edges)
        self.edges.append((a, b))
        self.tags.append(tag)
        self.origin.append(-1)
        ra = self.rot[a]
        ra.insert(ra.index(a_after) + 1, e)
        rb = self.rot[b]
        rb.insert(rb.index(b_after) + 1, e)
        self.pairs.setdefault(frozenset((a, b)), []).append(e)
        return e

    def move_edge(self, e: int, a: int, a_after: int, b: int, b_after: int) -> None:
        for v in self.edges[e]:
            self.rot[v].remove(e)
        self.edges[e] = (a, b)
        ra = self.rot[a]
        ra.insert(ra.index(a_after) + 1, e)
        rb = self.rot[b]
        rb.insert(rb.index(b_after) + 1, e)

    # corners --------------------------------------------------------------
    def corner(self, x: int, i: int) -> tuple[int, int, int, int]:
        """Corner ``i`` of dummy ``x``: (a, h_a, b, h_b) with face walk a -> x -> b."""
        r = self.rot[x]
        h_a, h_b = r[i], r[i - 1]
        return self.other(h_a, x), h_a, self.other(h_b, x), h_b

    def corner_closed(self, x: int, i: int) -> int | None:
        """Edge closing the corner into a triangle, if any."""
        a, h_a, b, h_b = self.corner(x, i)
        e = self.pred(b, h_b)
        if self.other(e, b) == a and self.pred(a, e) == h_a:
            return e
        return None

    def close_corner(self, x: int, i: int, tag: str, edge: int | None = None) -> int:
        a, h_a, b, h_b = self.corner(x, i)
        b_after = self.pred(b, h_b)
        if edge is None:
            return self.add_edge(a, h_a, b, b_after, tag)
        self.move_edge(edge, a, h_a, b, b_after)
        return edge

    def is_kite_side(self, e: int) -> bool:
        for d in (2 * e, 2 * e + 1):
            d1 = self.next_dart(d)
            w = self.head(d1)
            if w >= self.n_real and self.next_dart(self.next_dart(d1)) == d:
                return True
        return False

    # faces ----------------------------------------------------------------
    def freeze(self) -> PlaneGraph:
        return PlaneGraph(self.n, self.edges, self.rot, self.outer_dart, self.tags)

    def triangulate(self) -> list[int]:
        """Ear-cut every face without a dummy; returns darts of stuck quadrangles."""
        pg = self.freeze()
        stuck = []
        for walk in pg.faces:
            if len(walk) <= 3:
                continue
            if any(pg.head(d) >= self.n_real for d in walk):
                continue
            if not self._ear_cut(list(walk)):
                stuck.append(walk[0])
        return stuck

    def _ear_cut(self, walk: list[int]) -> bool:
        # walk[j] is the dart v_j -> v_{j+1}
        while len(walk) > 3:
            k = len(walk)
            verts = [self.edges[d >> 1][d & 1] for d in walk]
            start = min(range(k), key=lambda j: verts[j])
            for off in range(k):
                j = (start + off) % k
                # cut the ear at v_j: chord v_{j-1} -- v_{j+1}
                a, b = verts[j - 1], verts[(j + 1) % k]
                if a == b or self.adjacent(a, b):
                    continue
                d_prev, d_next = walk[j - 1], walk[(j + 1) % k]
                e = self.add_edge(a, d_prev >> 1, b, d_next >> 1, "augmentation")
                chord = self.out_dart(a, e)
                if j == 0:
                    walk = walk[1:-1] + [chord]
                else:
                    walk = walk[: j - 1] + [chord] + walk[j + 1 :]
                break
            else:
                return False
        return True


# ---------------------------------------------------------------------------
# stages


def _initial_origin(emb: Embedding) -> list[int]:
    return list(emb.half_of)


def _tagged_plane(emb: Embedding) -> PlaneGraph:
    pg = emb.plane
    crossed = {e for pair in emb.crossings for e in pair}
    tags = ["crossing" if emb.half_of[e] in crossed else "original" for e in range(pg.m)]
    return PlaneGraph(pg.n, pg.edges, pg.rotation, pg.outer_dart, tags)


def augment_planar_maximal(emb: Embedding) -> AugmentedEmbedding:
    """Close absent kite sides, classify crossings, triangulate free faces."""
    n = emb.n
    b = _Builder(_tagged_plane(emb), n, _initial_origin(emb))
    blocked = []
    for i in range(len(emb.crossings)):
        x = n + i
        for c in range(4):
            if b.corner_closed(x, c) is not None:
                continue
            a, _, bb, _ = b.corner(x, c)
            if b.adjacent(a, bb):
                blocked.append((i, c))
            else:
                b.close_corner(x, c, "augmentation")
    stuck = b.triangulate()
    classes = _classify(b, blocked)
    pg = b.freeze()
    return AugmentedEmbedding(
        base=emb,
        stage="boxtimes",
        plane=pg,
        origin=tuple(b.origin),
        classes=classes,
        blocked=tuple(blocked),
        stuck_faces=tuple(stuck),
        g_boxtimes=pg,
    )


def _reroutable(b: _Builder, a: int, c: int) -> int | None:
    for e in b.pairs.get(frozenset((a, c)), []):
        if b.tags[e] in ("original", "augmentation") and not b.is_kite_side(e):
            return e
    return None


def _classify(b: _Builder, blocked: Sequence[tuple[int, int]]) -> tuple[CrossingClass, ...]:
    kinds = {}
    for i, c in blocked:
        x = b.n_real + i
        if b.corner_closed(x, c) is not None:
            continue
        a, _, bb, _ = b.corner(x, c)
        k = "B" if _reroutable(b, a, bb) is not None else "W"
        if kinds.get(i) != "B":
            kinds[i] = k
    out = []
    for i in range(b.n - b.n_real):
        x = b.n_real + i
        bd = tuple(b.other(e, x) for e in b.rot[x])
        kind = kinds.get(i, "kite")
        if kind == "kite" and any(b.tags[b.corner_closed(x, c)] == "copy" for c in range(4)
                                  if b.corner_closed(x, c) is not None):
            kind = "W"
        out.append(CrossingClass(i, kind, bd))  # type: ignore[arg-type]
    return tuple(out)


def _builder(aug: AugmentedEmbedding) -> _Builder:
    return _Builder(aug.plane, aug.n, aug.origin)


def reroute_b_configurations(aug: AugmentedEmbedding) -> AugmentedEmbedding:
    """Reroute a free planar edge into each corner that needs it."""
    b = _builder(aug)
    log = list(aug.reroute_log)
    remaining = []
    for i, c in aug.blocked:
        x = aug.n + i
        if b.corner_closed(x, c) is not None:
            continue
        a, _, bb, _ = b.corner(x, c)
        e = _reroutable(b, a, bb)
        if e is None:
            remaining.append((i, c))
            continue
        u, v = b.edges[e]
        old = (b.pred(u, e), b.pred(v, e))
        if b.outer_dart is not None and b.outer_dart >> 1 == e:
            # keep the designated face: move the marker to a neighbouring dart
            b.outer_dart = b.next_dart(b.outer_dart)
        b.close_corner(x, c, "", edge=e)
        log.append(RerouteEntry(e, (u, v), old, i))
    stuck = b.triangulate()
    classes = _classify(b, remaining)
    return replace(
        aug,
        stage="rerouted",
        plane=b.freeze(),
        origin=tuple(b.origin),
        classes=classes,
        blocked=tuple(remaining),
        reroute_log=tuple(log),
        stuck_faces=tuple(_stuck_after(b, aug.stuck_faces) + stuck),
    )


def undo_reroutes(aug: AugmentedEmbedding) -> AugmentedEmbedding:
    """Embedding-preserving fix-up: put a copy of every rerouted edge back
    at its original place (tag ``restored``, origin = the rerouted edge).

    The u end keeps its old neighbour and the v end takes its corner in the
    same face.  Augmentation chords that have since split that face away
    from v are removed.  Copies that still find no corner are skipped."""
    b = _builder(aug)
    dead: set[int] = set()
    for r in aug.reroute_log:
        (u, v), (au, _) = r.ends, r.old_after
        if au not in b.rot[u]:
            continue
        while True:
            walk = _walk(b, b.out_dart(u, au))
            bv = next((b.pred(v, d >> 1) for d in walk if b.head(d) == v), None)
            chord = next((d >> 1 for d in walk if b.tags[d >> 1] == "augmentation"
                          and (d >> 1) != au and (d ^ 1) not in walk), None)
            if bv is not None or chord is None:
                break
            for x in b.edges[chord]:
                b.rot[x].remove(chord)
            dead.add(chord)
        if bv is None:
            continue
        e = b.add_edge(u, au, v, bv, "restored")
        b.origin[e] = r.edge
    pg, remap = b.freeze().remove_edges(dead)
    origin = [o for e, o in enumerate(b.origin) if remap[e] >= 0]
    return replace(aug, stage="restored", plane=pg, origin=tuple(origin))


def _walk(b: _Builder, start: int) -> list[int]:
    walk, d = [start], b.next_dart(start)
    while d != start:
        walk.append(d)
        d = b.next_dart(d)
    return walk


def _stuck_after(b: _Builder, darts: Sequence[int]) -> list[int]:
    pg = b.freeze()
    out, seen = [], set()
    for d in darts:
        f = pg.face_of[d]
        if len(pg.faces[f]) > 3 and f not in seen:
            seen.add(f)
            out.append(d)
    return out


def build_boxplus(aug: AugmentedEmbedding) -> AugmentedEmbedding:
    """Close the remaining corners with copies and build the decomposition tree."""
    if aug.stage == "boxtimes":
        aug = reroute_b_configurations(aug)
    b = _builder(aug)
    for i, c in aug.blocked:
        x = aug.n + i
        if b.corner_closed(x, c) is None:
            b.close_corner(x, c, "copy")
    stuck = b.triangulate()
    stuck_all = _stuck_after(b, list(aug.stuck_faces) + stuck)
    classes = _classify(b, [])
    b.outer_dart, note = _choose_outer(b, stuck_all)
    pg = b.freeze()
    classes = tuple(
        replace(cl, kind="W", outer=True) if _corner_is_outer(pg, aug.n, cl.pair) else cl
        for cl in classes
    )
    out = replace(
        aug,
        stage="boxplus",
        plane=pg,
        origin=tuple(b.origin),
        classes=classes,
        blocked=(),
        stuck_faces=tuple(stuck_all),
        outer_note=note,
    )
    return replace(out, tree=decompose(planar_skeleton(out), aug.n))


def _choose_outer(b: _Builder, stuck: Sequence[int]) -> tuple[int, str]:
    """Outer face of G⊞: the designated face if usable, else a real triangle."""
    pg = b.freeze()
    n = b.n_real
    d0 = b.outer_dart
    if d0 is not None:
        walk = pg.faces[pg.face_of[d0]]
        if all(pg.head(d) < n for d in walk):
            return walk[0], "designated face"
        chord = next(d for d in walk if pg.head(d) < n and pg.tail(d) < n)
        # a corner closed by an inserted edge: the designated face continues
        # on the other side of that edge
        other = pg.faces[pg.face_of[chord ^ 1]]
        if b.tags[chord >> 1] != "original" and all(pg.head(d) < n for d in other):
            return chord ^ 1, "designated face beyond inserted corner edge"
        return chord, "designated crossing corner (outer W-configuration)"
    for walk in pg.faces:
        if len(walk) == 3 and all(pg.head(d) < n for d in walk):
            return walk[0], "first real triangle"
    for d in stuck:
        return d, "untriangulable quadrangle"
    for walk in pg.faces:
        for d in walk:
            if pg.head(d) < n and pg.tail(d) < n:
                return d, "crossing corner (outer W-configuration)"
    raise ValidationError("no usable outer face")


def _corner_is_outer(pg: PlaneGraph, n: int, pair: int) -> bool:
    x = n + pair
    walk = pg.faces[pg.outer_face]
    return any(pg.head(d) == x for d in walk)


def normal_form(emb: Embedding) -> AugmentedEmbedding:
    return build_boxplus(reroute_b_configurations(augment_planar_maximal(emb)))


# ---------------------------------------------------------------------------
# skeleton and decomposition


@dataclass(frozen=True, eq=False)
class Skeleton:
    """G□ with the quadrangle of every crossing pair."""

    plane: PlaneGraph
    quad_dart: tuple[int, ...]  # per crossing: a dart of its quadrangle
    crossing_edges: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    edge_tag: tuple[str, ...]
    edge_origin: tuple[int, ...]

    def quad_faces(self) -> dict[int, int]:
        """Face id -> crossing index."""
        fo = self.plane.face_of
        return {fo[d]: i for i, d in enumerate(self.quad_dart)}


def planar_skeleton(aug: AugmentedEmbedding) -> Skeleton:
    pg = aug.plane
    n = aug.n
    dead = [e for e, (u, v) in enumerate(pg.edges) if u >= n or v >= n]
    quad_chord = []
    crossing_edges = []
    for i in range(aug.num_crossings):
        x = n + i
        rot = pg.rotation[x]
        a, bq, c, d = (pg.other(e, x) for e in rot)
        crossing_edges.append(((a, c), (bq, d)))
        # corner (a, x, d) walks a -> x -> d -> a, its chord dart is d -> a
        h_a = rot[0]
        dart = pg.next_dart(pg.next_dart(pg.out_dart(a, h_a)))
        quad_chord.append(dart)
    outer = pg.outer_dart
    if outer is not None and (pg.head(outer) >= n or pg.tail(outer) >= n):
        walk = pg.faces[pg.face_of[outer]]
        outer = next(d for d in walk if pg.head(d) < n and pg.tail(d) < n)
    sq, remap = PlaneGraph(pg.n, pg.edges, pg.rotation, outer, pg.tags).remove_edges(dead)
    sq = PlaneGraph(n, sq.edges, sq.rotation[:n], sq.outer_dart, sq.tags)
    qd = tuple(2 * remap[d >> 1] + (d & 1) for d in quad_chord)
    origin = [0] * sq.m
    for e_old, e_new in enumerate(remap):
        if e_new >= 0:
            origin[e_new] = aug.origin[e_old]
    return Skeleton(sq, qd, tuple(crossing_edges), sq.tags, tuple(origin))


def decompose(sk: Skeleton, n: int) -> DecompositionTree:
    """Split G□ at parallel edges into pieces; the root holds the outer face.

    Faces joined across non-parallel edges form the pieces.  Each piece keeps
    one representative for the two parallel edges bounding it per pair.
    """
    pg = sk.plane
    fo = pg.face_of
    nf = len(pg.faces)
    classes: dict[frozenset[int], list[int]] = {}
    for e, (u, v) in enumerate(pg.edges):
        classes.setdefault(frozenset((u, v)), []).append(e)
    pair_of: dict[int, frozenset[int]] = {}
    for key, es in classes.items():
        if len(es) > 1:
            for e in es:
                pair_of[e] = key
    parent = list(range(nf))

    def find(f: int) -> int:
        while parent[f] != f:
            parent[f] = parent[parent[f]]
            f = parent[f]
        return f

    for e in range(pg.m):
        if e not in pair_of:
            a, b = find(fo[2 * e]), find(fo[2 * e + 1])
            if a != b:
                parent[a] = b
    piece_id: dict[int, int] = {}
    face_piece = []
    for f in range(nf):
        face_piece.append(piece_id.setdefault(find(f), len(piece_id)))
    k = len(piece_id)
    edge_pieces = [
        sorted({face_piece[fo[2 * e]], face_piece[fo[2 * e + 1]]}) for e in range(pg.m)
    ]
    # representative global edge per (piece, pair): lowest id
    rep_of: dict[tuple[int, frozenset[int]], int] = {}
    for e, key in pair_of.items():
        for P in edge_pieces[e]:
            cur = rep_of.get((P, key))
            if cur is None or e < cur:
                rep_of[(P, key)] = e

    def canon(P: int, e: int) -> int:
        key = pair_of.get(e)
        return e if key is None else rep_of[(P, key)]

    rot_lists: list[dict[int, list[int]]] = [dict() for _ in range(k)]
    for v in range(pg.n):
        for e in pg.rotation[v]:
            for P in edge_pieces[e]:
                rot_lists[P].setdefault(v, []).append(canon(P, e))
    pieces = []
    for P in range(k):
        verts = sorted(rot_lists[P])
        local = {v: i for i, v in enumerate(verts)}
        g_edges: list[int] = []
        lid: dict[int, int] = {}
        rot = []
        for v in verts:
            r = rot_lists[P][v]
            out = [e for j, e in enumerate(r) if e != r[j - 1] or len(r) == 1]
            if not out:
                out = r[:1]
            loc = []
            for e in out:
                if e not in lid:
                    lid[e] = len(g_edges)
                    g_edges.append(e)
                loc.append(lid[e])
            rot.append(loc)
        edges = [(local[pg.edges[e][0]], local[pg.edges[e][1]]) for e in g_edges]
        tags = [pg.tags[e] for e in g_edges]
        pieces.append((verts, PlaneGraph(len(verts), edges, rot, None, tags), tuple(g_edges), lid))
    # piece/pair tree rooted at the piece holding the outer face
    root = face_piece[fo[pg.outer_dart]] if pg.outer_dart is not None else 0
    pair_pieces: dict[frozenset[int], set[int]] = {}
    piece_pairs: list[set[frozenset[int]]] = [set() for _ in range(k)]
    for (P, key) in rep_of:
        pair_pieces.setdefault(key, set()).add(P)
        piece_pairs[P].add(key)
    order = [root]
    up: dict[int, tuple[int, frozenset[int]] | None] = {root: None}
    seen_pairs: set[frozenset[int]] = set()
    children: dict[int, list[int]] = {P: [] for P in range(k)}
    i = 0
    while i < len(order):
        P = order[i]
        i += 1
        for key in sorted(piece_pairs[P], key=sorted):
            if key in seen_pairs:
                continue
            seen_pairs.add(key)
            x = min(key)
            es = classes[key]
            # children in clockwise order at x
            pos = pg.pos[x]
            kids = sorted(pair_pieces[key] - {P},
                          key=lambda Q: min(pos[e] for e in es if Q in edge_pieces[e]))
            for Q in kids:
                up[Q] = (P, key)
                children[P].append(Q)
                order.append(Q)
    index = {P: j for j, P in enumerate(order)}
    nodes = []
    for P in order:
        verts, piece, g_edges, lid = pieces[P]
        link = up[P]
        pair = rep = None
        if link is not None:
            key = link[1]
            pair = tuple(sorted(key))
            rep = lid[rep_of[(P, key)]]
        if P == root and pg.outer_dart is not None:
            d = pg.outer_dart
            e = lid[canon(P, d >> 1)]
            tail_local = verts.index(pg.tail(d))
            od = 2 * e if piece.edges[e][0] == tail_local else 2 * e + 1
            piece = PlaneGraph(piece.n, piece.edges, piece.rotation, od, piece.tags)
        nodes.append(TreeNode(
            tuple(verts), pair, rep, piece, tuple(verts),
            tuple(index[Q] for Q in children[P]),
            tuple(tuple(sorted(key)) for key in sorted(piece_pairs[P], key=sorted)),
            g_edges,
        ))
    return DecompositionTree(tuple(nodes), 0)


# ---------------------------------------------------------------------------
# kite contraction (IC)


@dataclass(frozen=True, eq=False)
class KiteContraction:
    plane: PlaneGraph  # G• on n - 3k vertices, multi-edges kept
    vertex_of: tuple[int, ...]  # G vertex -> G• vertex
    kites: tuple[tuple[int, int, int, int], ...]  # boundary walk of each kite quad
    kite_vertex: tuple[int, ...]  # G• id of each kite
    edge_of: tuple[int, ...]  # G• edge -> G□ edge


def kite_contract(aug: AugmentedEmbedding, sk: Skeleton | None = None) -> KiteContraction:
    """Contract each kite quadrangle of G□ into one vertex."""
    if sk is None:
        sk = planar_skeleton(aug)
    for cl in aug.classes:
        if cl.kind == "W":
            raise WConfigurationPresent(f"crossing {cl.pair} is a W-configuration")
    if any(t == "copy" for t in aug.plane.tags):
        raise WConfigurationPresent("normal form needed copies of separation-pair edges")
    pg = sk.plane
    n = pg.n
    owner = [-1] * n
    kites = []
    quads = []
    for i, d in enumerate(sk.quad_dart):
        walk = pg.faces[pg.face_of[d]]
        verts = tuple(pg.tail(w) for w in walk)
        if len(verts) != 4:
            raise ValidationError(f"crossing {i} has no quadrangle in G□")
        for v in verts:
            if owner[v] != -1:
                raise NotICPlanar(f"kites {owner[v]} and {i} share vertex {v}")
            owner[v] = i
        kites.append(verts)
        quads.append(walk)
    # new vertex ids: plain vertices keep relative order, kites appended
    vertex_of = [0] * n
    nid = 0
    for v in range(n):
        if owner[v] == -1:
            vertex_of[v] = nid
            nid += 1
    kite_vertex = []
    for i in range(len(kites)):
        kite_vertex.append(nid)
        for v in kites[i]:
            vertex_of[v] = nid
        nid += 1
    side = set()
    for walk in quads:
        for d in walk:
            side.add(d >> 1)
    keep = [e for e in range(pg.m) if e not in side]
    new_id = {e: i for i, e in enumerate(keep)}
    edges = [(vertex_of[pg.edges[e][0]], vertex_of[pg.edges[e][1]]) for e in keep]
    rot: list[list[int]] = [[] for _ in range(nid)]
    for v in range(n):
        if owner[v] == -1:
            rot[vertex_of[v]] = [new_id[e] for e in pg.rotation[v]]
    for i, walk in enumerate(quads):
        merged = []
        k = len(walk)
        for j in range(k):
            # corner v = head(walk[j-1]); externals clockwise from after
            # the edge to prev up to before the edge to next
            d_in, d_out = walk[j - 1], walk[j]
            v = pg.tail(d_out)
            r = pg.rotation[v]
            p = pg.pos[v]
            start = p[d_in >> 1]
            stop = p[d_out >> 1]
            t = (start + 1) % len(r)
            while t != stop:
                merged.append(new_id[r[t]])
                t = (t + 1) % len(r)
        rot[kite_vertex[i]] = merged
    for e in keep:
        u, v = pg.edges[e]
        if vertex_of[u] == vertex_of[v]:
            raise NotICPlanar("contraction would create a loop")
    outer = None
    if pg.outer_dart is not None and (pg.outer_dart >> 1) in new_id:
        od = pg.outer_dart
        outer = 2 * new_id[od >> 1] + (od & 1)
    gb = PlaneGraph(nid, edges, rot, outer)
    return KiteContraction(gb, tuple(vertex_of), tuple(kites), tuple(kite_vertex), tuple(keep))
