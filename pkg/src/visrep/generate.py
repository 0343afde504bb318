"""Random 1-planar instances and the named library.

Instances are built as planarizations given by clockwise face lists and
then converted into an :class:`Embedding` whose crossing pairs follow the
convention of :func:`build_embedding`.
"""

from __future__ import annotations

import random
from typing import Sequence

from .errors import InfeasibleParams, ValidationError
from .graph import Embedding, Graph, PlaneGraph, build_embedding

KINDS = ("planar", "ic", "one_planar")


def plane_from_faces(n: int, faces: Sequence[Sequence[int]]) -> PlaneGraph:
    """Simple plane graph from face cycles (face on the right of each dart)."""
    eid: dict[frozenset[int], int] = {}
    edges: list[tuple[int, int]] = []
    cw_next: list[dict[int, int]] = [dict() for _ in range(n)]
    darts: set[tuple[int, int]] = set()
    for face in faces:
        k = len(face)
        for i in range(k):
            a, b, c = face[i - 1], face[i], face[(i + 1) % k]
            if (a, b) in darts:
                raise ValidationError(f"dart {a}->{b} used twice")
            darts.add((a, b))
            key = frozenset((a, b))
            if key not in eid:
                eid[key] = len(edges)
                edges.append((a, b))
            # arriving at b from a, the face continues to c: c precedes a clockwise
            cw_next[b][c] = a
    rotation = []
    for v in range(n):
        nxt = cw_next[v]
        if not nxt:
            rotation.append([])
            continue
        start = min(nxt)
        order = [start]
        w = nxt[start]
        while w != start:
            order.append(w)
            w = nxt[w]
        if len(order) != len(nxt):
            raise ValidationError(f"faces around {v} do not form a single cycle")
        rotation.append([eid[frozenset((v, w))] for w in order])
    return PlaneGraph(n, edges, rotation)


def embedding_from_planarization(
    n_real: int, pg: PlaneGraph, outer: tuple[int, int] | None = None
) -> Embedding:
    """Collapse dummies ``>= n_real`` back into crossing pairs.

    ``outer`` names a dart ``(u, v)`` of the planarization lying on the outer
    face; dummy ``n_real + i`` keeps its id in the rebuilt planarization.
    """
    edges: list[tuple[int, int]] = []
    # planarization edge -> original edge id
    orig = [-1] * pg.m
    for e, (u, v) in enumerate(pg.edges):
        if u < n_real and v < n_real:
            orig[e] = len(edges)
            edges.append((u, v))
    crossings = []
    for x in range(n_real, pg.n):
        rot = pg.rotation[x]
        if len(rot) != 4:
            raise ValidationError(f"dummy {x} has degree {len(rot)}")
        a, b, c, d = (pg.other(e, x) for e in rot)
        e1, e2 = len(edges), len(edges) + 1
        edges.append((a, c))
        edges.append((b, d))
        orig[rot[0]] = orig[rot[2]] = e1
        orig[rot[1]] = orig[rot[3]] = e2
        crossings.append((e1, e2))
    rotation = [[orig[e] for e in pg.rotation[v]] for v in range(n_real)]
    emb = build_embedding(Graph(n_real, tuple(edges)), rotation, crossings)
    if outer is not None:
        set_outer_dart(emb, outer)
    return emb


def set_outer_dart(emb: Embedding, dart: tuple[int, int]) -> None:
    pg = emb.plane
    d = pg.dart_between(*dart)
    if d is None:
        raise ValidationError(f"no dart {dart} in planarization")
    pg.outer_dart = d
    pg.__dict__.pop("outer_face", None)


# ---------------------------------------------------------------------------
# random triangulations


class _Triangulation:
    """Combinatorial triangulation kept as clockwise triangles."""

    def __init__(self) -> None:
        self.faces: dict[int, tuple[int, int, int]] = {}
        self.dart_face: dict[tuple[int, int], int] = {}
        self.adj: list[set[int]] = []
        self._next = 0

    def add_face(self, f: tuple[int, int, int]) -> int:
        fid = self._next
        self._next += 1
        self.faces[fid] = f
        a, b, c = f
        for d in ((a, b), (b, c), (c, a)):
            self.dart_face[d] = fid
        return fid

    def remove_face(self, fid: int) -> tuple[int, int, int]:
        f = self.faces.pop(fid)
        a, b, c = f
        for d in ((a, b), (b, c), (c, a)):
            del self.dart_face[d]
        return f

    def add_vertex(self) -> int:
        self.adj.append(set())
        return len(self.adj) - 1

    def link(self, u: int, v: int) -> None:
        self.adj[u].add(v)
        self.adj[v].add(u)

    def insert(self, fid: int) -> int:
        a, b, c = self.remove_face(fid)
        p = self.add_vertex()
        for u in (a, b, c):
            self.link(p, u)
        self.add_face((a, b, p))
        self.add_face((b, c, p))
        self.add_face((c, a, p))
        return p

    def third(self, u: int, v: int) -> int:
        a, b, c = self.faces[self.dart_face[(u, v)]]
        return ({a, b, c} - {u, v}).pop()

    def flip(self, u: int, v: int) -> bool:
        w = self.third(u, v)
        z = self.third(v, u)
        if w == z or z in self.adj[w] or len(self.adj[u]) <= 3 or len(self.adj[v]) <= 3:
            return False
        self.remove_face(self.dart_face[(u, v)])
        self.remove_face(self.dart_face[(v, u)])
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.link(w, z)
        self.add_face((w, u, z))
        self.add_face((z, v, w))
        return True


def random_triangulation(n: int, rng: random.Random, flips: int | None = None) -> _Triangulation:
    t = _Triangulation()
    for _ in range(3):
        t.add_vertex()
    t.link(0, 1), t.link(1, 2), t.link(0, 2)
    t.add_face((0, 1, 2))
    t.add_face((0, 2, 1))
    fids = [0, 1]
    while len(t.adj) < n:
        i = rng.randrange(len(fids))
        fid = fids[i]
        fids[i] = fids[-1]
        fids.pop()
        start = t._next
        t.insert(fid)
        fids.extend(range(start, start + 3))
    if flips is None:
        flips = 2 * n
    for _ in range(flips):
        u = rng.randrange(n)
        if not t.adj[u]:
            continue
        v = rng.choice(sorted(t.adj[u]))
        t.flip(u, v)
    return t


def generate_instance(
    n: int,
    seed: int,
    kind: str = "one_planar",
    kites: int | None = None,
    gadgets: int | None = None,
    drop: float = 0.0,
) -> Embedding:
    """Deterministic random instance.

    ``planar``: triangulation, no crossings.  ``ic``: kites with pairwise
    disjoint corners.  ``one_planar``: kites anywhere plus ``gadgets``
    separation-pair components (5 vertices each) embedded as W-configurations.
    ``drop`` removes that fraction of planar edges while keeping
    2-connectivity, so that augmentation has work to do.
    """
    if kind not in KINDS:
        raise InfeasibleParams(f"unknown kind {kind!r}")
    if n < 4:
        raise InfeasibleParams("n must be at least 4")
    rng = random.Random(f"{kind}:{n}:{seed}")
    if kind != "one_planar":
        gadgets = 0
    elif gadgets is None:
        gadgets = rng.randrange(0, n // 40 + 1) if n >= 20 else 0
    if kind == "ic" and kites is not None and kites > n // 4:
        raise InfeasibleParams(f"{kites} kites exceed floor(n/4) = {n // 4}")
    if kind == "planar" and kites:
        raise InfeasibleParams("planar instances have no kites")
    base = n - 5 * gadgets
    if base < 4:
        raise InfeasibleParams("too many gadgets for n")
    t = random_triangulation(base, rng)

    # choose the outer face first so it stays a plain triangle
    outer_fid = min(t.faces)
    used_faces = {outer_fid}
    faces_out: list[tuple[int, ...]] = []
    n_real = base
    new_pairs: set[frozenset[int]] = set()

    # W gadgets on planar edges
    gadget_specs = []
    edge_list = sorted({(min(u, v), max(u, v)) for u in range(base) for v in t.adj[u]})
    rng.shuffle(edge_list)
    for x, y in edge_list:
        if len(gadget_specs) >= gadgets:
            break
        f1, f2 = t.dart_face[(x, y)], t.dart_face[(y, x)]
        if f1 in used_faces or f2 in used_faces:
            continue
        used_faces |= {f1, f2}
        gadget_specs.append((x, y, f2))
    if len(gadget_specs) < gadgets:
        raise InfeasibleParams("could not place all gadgets")

    # kites
    if kind == "planar":
        budget = 0
    elif kites is not None:
        budget = kites
    elif kind == "ic":
        budget = rng.randint(1, max(1, base // 4))
    else:
        budget = rng.randint(1, max(1, base // 2))
    corners_used: set[int] = set()
    kite_specs = []
    for u, v in edge_list:
        if len(kite_specs) >= budget:
            break
        f1, f2 = t.dart_face[(u, v)], t.dart_face[(v, u)]
        if f1 in used_faces or f2 in used_faces:
            continue
        w, z = t.third(u, v), t.third(v, u)
        if z in t.adj[w] or frozenset((w, z)) in new_pairs:
            continue
        quad = {u, v, w, z}
        if kind == "ic" and quad & corners_used:
            continue
        used_faces |= {f1, f2}
        corners_used |= quad
        new_pairs.add(frozenset((w, z)))
        kite_specs.append((u, v, w, z, f1, f2))
    if kites is not None and len(kite_specs) < kites:
        raise InfeasibleParams(f"only {len(kite_specs)} of {kites} kites fit")

    replaced = set()
    dummies: list[None] = []
    dummy_faces: list[tuple[int, ...]] = []
    for u, v, w, z, f1, f2 in kite_specs:
        replaced |= {f1, f2}
        dummies.append(None)
        dummy_faces.append(("K", u, v, w, z))
    for x, y, f2 in gadget_specs:
        replaced.add(f2)
        dummy_faces.append(("W", x, y, t.third(y, x)))

    for fid in sorted(t.faces):
        if fid not in replaced:
            faces_out.append(t.faces[fid])
    outer_face = t.faces[outer_fid]

    # vertex ids: real vertices first, dummies after
    gadget_real = []
    for spec in dummy_faces:
        if spec[0] == "W":
            ids = list(range(n_real, n_real + 5))
            n_real += 5
            gadget_real.append(ids)
    n_dummy = sum(1 if s[0] == "K" else 2 for s in dummy_faces)
    x_next = n_real
    g_iter = iter(gadget_real)
    for spec in dummy_faces:
        if spec[0] == "K":
            _, u, v, w, z = spec
            X = x_next
            x_next += 1
            # quad boundary darts v->w, w->u, u->z, z->v
            faces_out += [(v, w, X), (w, u, X), (u, z, X), (z, v, X)]
        else:
            _, x, y, z = spec
            p, q, r, s, h = next(g_iter)
            X1, X2 = x_next, x_next + 1
            x_next += 2
            faces_out += _gadget_faces(x, y, z, p, q, r, s, h, X1, X2)
    assert x_next == n_real + n_dummy
    pg = plane_from_faces(x_next, faces_out)
    emb = embedding_from_planarization(n_real, pg, (outer_face[0], outer_face[1]))
    if drop > 0:
        emb = _drop_edges(emb, rng, drop)
    return emb


def _gadget_faces(x, y, z, p, q, r, s, h, X1, X2) -> list[tuple[int, ...]]:
    """Faces of a W gadget glued into the face ``(y, x, z)`` of edge ``{x,y}``.

    The edge ``{x,y}`` keeps its dart ``x->y`` in the neighbouring face and
    its dart ``y->x`` now bounds the corner ``(x, X2, y)``.  The corner of
    ``X1`` between ``x`` and ``y`` shares a face with ``z``.
    """
    return [
        (p, s, h), (s, r, h), (r, q, h), (q, p, h),
        (x, p, q), (y, r, s),
        (X1, y, s), (X1, s, p), (X1, p, x),
        (X1, x, z, y),
        (X2, q, r), (X2, r, y), (X2, x, q),
        (x, X2, y),
    ]


def _drop_edges(emb: Embedding, rng: random.Random, frac: float) -> Embedding:
    import networkx as nx

    g = emb.graph
    crossed = {e for pair in emb.crossings for e in pair}
    planar = [e for e in range(len(g.edges)) if e not in crossed]
    rng.shuffle(planar)
    target = int(frac * len(planar))
    nxg = nx.Graph()
    nxg.add_edges_from(g.edges)
    dead: set[int] = set()
    for e in planar:
        if len(dead) >= target:
            break
        u, v = g.edges[e]
        if nxg.degree(u) <= 2 or nxg.degree(v) <= 2:
            continue
        nxg.remove_edge(u, v)
        if nx.is_biconnected(nxg):
            dead.add(e)
        else:
            nxg.add_edge(u, v)
    return remove_graph_edges(emb, dead)


def remove_graph_edges(emb: Embedding, dead: set[int]) -> Embedding:
    g = emb.graph
    remap = {}
    edges = []
    for e, uv in enumerate(g.edges):
        if e not in dead:
            remap[e] = len(edges)
            edges.append(uv)
    rotation = [[remap[e] for e in r if e in remap] for r in emb.rotation]
    crossings = [(remap[a], remap[b]) for a, b in emb.crossings]
    pg = emb.plane
    od = pg.outer_dart
    out = build_embedding(Graph(g.n, tuple(edges)), rotation, crossings)
    # keep the outer face anchored on a surviving dart
    if od is not None:
        face = pg.faces[pg.face_of[od]]
        for d in face:
            if emb.half_of[d >> 1] not in dead:
                set_outer_dart(out, (pg.tail(d), pg.head(d)))
                break
    return out


# ---------------------------------------------------------------------------
# named instances


def _c3() -> Embedding:
    return embedding_from_planarization(3, plane_from_faces(3, [(0, 1, 2), (0, 2, 1)]))


def _k4_planar() -> Embedding:
    faces = [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)]
    return embedding_from_planarization(4, plane_from_faces(4, faces), (1, 3))


def _k4_kite() -> Embedding:
    X = 4
    faces = [(0, 1, X), (1, 2, X), (2, 3, X), (3, 0, X), (1, 0, 3, 2)]
    return embedding_from_planarization(4, plane_from_faces(5, faces), (1, 0))


def _w4() -> Embedding:
    faces = [(0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4), (1, 0, 3, 2)]
    return embedding_from_planarization(5, plane_from_faces(5, faces), (1, 0))


def _xw6_faces(p, q, v, dummies) -> list[tuple[int, ...]]:
    """Cube with poles p, q and hexagon v[0..5]; each quad gets a crossing."""
    v1, v2, v3, v4, v5, v6 = v
    quads = [
        (v1, v2, v3, p), (v3, v4, v5, p), (v5, v6, v1, p),
        (v4, v3, v2, q), (v6, v5, v4, q), (v2, v1, v6, q),
    ]
    faces = []
    for (a, b, c, d), X in zip(quads, dummies):
        faces += [(a, b, X), (b, c, X), (c, d, X), (d, a, X)]
    return faces


def _xw6() -> Embedding:
    # labels: 0 = pole p, 1..6 = hexagon, 7 = pole q
    faces = _xw6_faces(0, 7, [1, 2, 3, 4, 5, 6], range(8, 14))
    return embedding_from_planarization(8, plane_from_faces(14, faces), (1, 2))


def _dxw() -> Embedding:
    """Two XW6 copies sharing the adjacent vertices 0 and 7 (labels 1 and 8).

    Inference: copy A uses p = 0, hexagon 1, 6, 2, 3, 4, 5 so that the outer
    quadrangle is (0, 1, 6, 7) = (1, 2, 7, 8); copy B is the same cube on
    0, 8..13, 7.  The original edge {0,7} separates a corner of A from a
    corner of B; the second pair of such corners shares one quadrangular
    face and receives the copy of {0,7} during augmentation.
    """
    # A: p=0, hexagon v1..v6 = 1,6,7,2,3,4... chosen so that p-v3 is {0,7}
    a_faces = _xw6_faces(0, 5, [1, 6, 7, 2, 3, 4], range(14, 20))
    b_faces = _xw6_faces(0, 13, [8, 12, 7, 9, 10, 11], range(20, 26))
    # corners with the edge {0,7}: find them and merge one A/B pair
    def corner(faces, a, b):
        for f in faces:
            if len(f) == 3 and f[0] == a and f[1] == b:
                return f
        raise AssertionError

    a_down = corner(a_faces, 7, 0)  # dart 7->0 in A
    b_up = corner(b_faces, 0, 7)  # dart 0->7 in B
    b_down = corner(b_faces, 7, 0)
    a_up = corner(a_faces, 0, 7)
    # keep edge {0,7} between a_up (0->7) and b_down (7->0);
    # merge a_down and b_up into (7, XA, 0, XB) -> walk 0->XA? compute:
    # a_down = (7, 0, XA): darts 7->0, 0->XA, XA->7
    # b_up = (0, 7, XB): darts 0->7, 7->XB, XB->0
    merged = (0, a_down[2], 7, b_up[2])
    faces = [f for f in a_faces + b_faces if f not in (a_down, b_up)] + [merged]
    del a_up, b_down
    return embedding_from_planarization(14, plane_from_faces(26, faces), (0, 1))


def _b_config() -> Embedding:
    a, b, c, d, x, X = 0, 1, 2, 3, 4, 5
    faces = [(a, x, b, X), (b, c, X), (c, d, X), (d, a, X), (x, a, b), (b, a, d, c)]
    return embedding_from_planarization(5, plane_from_faces(6, faces), (b, a))


def _w_config() -> Embedding:
    x, y, z, p, q, r, s, h, X1, X2 = range(10)
    faces = [
        (p, s, h), (s, r, h), (r, q, h), (q, p, h),
        (x, p, q), (y, r, s),
        (X1, y, s), (X1, s, p), (X1, p, x), (X1, x, y),
        (y, x, z),
        (X2, q, r), (X2, r, y), (X2, x, q),
        (x, X2, y, z),
    ]
    return embedding_from_planarization(8, plane_from_faces(10, faces), (x, X2))


NAMED = {
    "c3": _c3,
    "k4_planar": _k4_planar,
    "k4_kite": _k4_kite,
    "w4": _w4,
    "xw6": _xw6,
    "dxw": _dxw,
    "b_config": _b_config,
    "w_config": _w_config,
}


def named_instances() -> dict[str, Embedding]:
    return {name: make() for name, make in NAMED.items()}


def named(name: str) -> Embedding:
    if name not in NAMED:
        raise ValidationError(f"unknown instance {name!r}")
    return NAMED[name]()
