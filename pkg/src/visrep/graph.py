"""Graphs, rotation systems, planarization, face walks and duals.

Edges are identified by their index.  A dart is an oriented edge: dart
``2*e`` runs from ``edges[e][0]`` to ``edges[e][1]`` and dart ``2*e + 1``
runs the other way.  Rotations list edge ids in clockwise order.  Faces
are traversed with the face on the right of every dart, so inner faces
come out clockwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

from .errors import (
    DensityViolation,
    DuplicateCrossing,
    EulerViolation,
    NotSimple,
    NotTwoConnected,
    ValidationError,
)


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected graph on vertices ``0..n-1``; parallel edges allowed via tags."""

    n: int
    edges: tuple[tuple[int, int], ...]
    tags: tuple[str, ...] | None = None

    def tag(self, e: int) -> str:
        return self.tags[e] if self.tags is not None else "original"

    @cached_property
    def incident(self) -> list[list[int]]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for e, (u, v) in enumerate(self.edges):
            inc[u].append(e)
            inc[v].append(e)
        return inc

    def pairs(self) -> set[frozenset[int]]:
        return {frozenset(p) for p in self.edges}

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


class PlaneGraph:
    """A connected multigraph with a fixed planar rotation system.

    Instances are treated as immutable; derived data is cached.
    """

    def __init__(
        self,
        n: int,
        edges: Sequence[tuple[int, int]],
        rotation: Sequence[Sequence[int]],
        outer_dart: int | None = None,
        tags: Sequence[str] | None = None,
    ) -> None:
        self.n = n
        self.edges = tuple((int(u), int(v)) for u, v in edges)
        self.rotation = tuple(tuple(r) for r in rotation)
        self.outer_dart = outer_dart
        self.tags = tuple(tags) if tags is not None else ("original",) * len(self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    # darts ---------------------------------------------------------------
    def tail(self, d: int) -> int:
        return self.edges[d >> 1][d & 1]

    def head(self, d: int) -> int:
        return self.edges[d >> 1][1 - (d & 1)]

    def out_dart(self, v: int, e: int) -> int:
        return 2 * e if self.edges[e][0] == v else 2 * e + 1

    def dart_between(self, u: int, v: int) -> int | None:
        for e in self.rotation[u]:
            if self.other(e, u) == v:
                return self.out_dart(u, e)
        return None

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    @cached_property
    def pos(self) -> list[dict[int, int]]:
        return [{e: i for i, e in enumerate(r)} for r in self.rotation]

    def next_dart(self, d: int) -> int:
        """Successor of ``d`` on the face to its right."""
        v = self.head(d)
        rot = self.rotation[v]
        e2 = rot[self.pos[v][d >> 1] - 1]
        return self.out_dart(v, e2)

    # faces ---------------------------------------------------------------
    @cached_property
    def _face_data(self) -> tuple[list[list[int]], list[int]]:
        face_of = [-1] * (2 * self.m)
        faces: list[list[int]] = []
        edges = self.edges
        rotation = self.rotation
        pos = self.pos
        for start in range(2 * self.m):
            if face_of[start] != -1:
                continue
            fid = len(faces)
            walk = []
            d = start
            while face_of[d] == -1:
                face_of[d] = fid
                walk.append(d)
                e = d >> 1
                v = edges[e][1 - (d & 1)]
                rot = rotation[v]
                e2 = rot[pos[v][e] - 1]
                d = 2 * e2 if edges[e2][0] == v else 2 * e2 + 1
            if d != start:
                raise EulerViolation("rotation system does not close faces")
            faces.append(walk)
        return faces, face_of

    @property
    def faces(self) -> list[list[int]]:
        return self._face_data[0]

    @property
    def face_of(self) -> list[int]:
        return self._face_data[1]

    def face_vertices(self, f: int) -> list[int]:
        return [self.tail(d) for d in self.faces[f]]

    @cached_property
    def outer_face(self) -> int:
        if self.outer_dart is not None:
            return self.face_of[self.outer_dart]
        return default_outer_face(self.faces)

    def euler_ok(self) -> bool:
        return self.n - self.m + len(self.faces) == 2

    def neighbors(self, v: int) -> list[int]:
        return [self.other(e, v) for e in self.rotation[v]]

    def graph(self) -> Graph:
        return Graph(self.n, self.edges, self.tags)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def remove_edges(self, dead: Iterable[int]) -> tuple["PlaneGraph", list[int]]:
        """Drop edges; returns the new graph and an old->new edge id map (-1 if gone)."""
        dead = set(dead)
        remap = [-1] * self.m
        new_edges = []
        new_tags = []
        for e in range(self.m):
            if e not in dead:
                remap[e] = len(new_edges)
                new_edges.append(self.edges[e])
                new_tags.append(self.tags[e])
        rot = [[remap[e] for e in r if remap[e] >= 0] for r in self.rotation]
        outer = None
        if self.outer_dart is not None and remap[self.outer_dart >> 1] >= 0:
            outer = 2 * remap[self.outer_dart >> 1] + (self.outer_dart & 1)
        return PlaneGraph(self.n, new_edges, rot, outer, new_tags), remap


def default_outer_face(faces: list[list[int]]) -> int:
    best = 0
    for i, w in enumerate(faces):
        if len(w) > len(faces[best]):
            best = i
    return best


def is_biconnected(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    if n < 3:
        return nx.is_connected(g) if n else False
    return nx.is_biconnected(g)


# ---------------------------------------------------------------------------
# 1-planar embeddings


@dataclass(frozen=True, eq=False)
class Embedding:
    """A graph with a clockwise rotation system and declared crossing pairs.

    ``plane`` is the planarization; dummy vertex ``graph.n + i`` stands for
    ``crossings[i]``.  ``half_of[e']`` maps a planarization edge back to the
    original edge id.
    """

    graph: Graph
    rotation: tuple[tuple[int, ...], ...]
    crossings: tuple[tuple[int, int], ...]
    plane: PlaneGraph
    half_of: tuple[int, ...]
    flips: tuple[bool, ...] = field(default=())

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def outer_face(self) -> int:
        return self.plane.outer_face

    @property
    def faces(self) -> list[list[int]]:
        return self.plane.faces

    def dummy(self, i: int) -> int:
        return self.graph.n + i

    def is_ic(self) -> bool:
        seen: set[int] = set()
        for e1, e2 in self.crossings:
            ends = set(self.graph.edges[e1]) | set(self.graph.edges[e2])
            if ends & seen:
                return False
            seen |= ends
        return True


def _planarize(
    graph: Graph,
    rotation: Sequence[Sequence[int]],
    crossings: Sequence[tuple[int, int]],
    flips: Sequence[bool],
) -> tuple[PlaneGraph, list[int]]:
    n = graph.n
    new_edges: list[tuple[int, int]] = []
    half_of: list[int] = []
    # (original edge, endpoint) -> planarization edge
    piece: dict[tuple[int, int], int] = {}
    crossed: dict[int, int] = {}
    for i, (e1, e2) in enumerate(crossings):
        crossed[e1] = i
        crossed[e2] = i
    dummy_rot: list[list[int]] = [[] for _ in crossings]
    for e, (u, v) in enumerate(graph.edges):
        if e in crossed:
            x = n + crossed[e]
            for end in (u, v):
                piece[(e, end)] = len(new_edges)
                new_edges.append((end, x))
                half_of.append(e)
        else:
            piece[(e, u)] = piece[(e, v)] = len(new_edges)
            new_edges.append((u, v))
            half_of.append(e)
    for i, (e1, e2) in enumerate(crossings):
        a, c = graph.edges[e1]
        b, d = graph.edges[e2]
        if flips[i]:
            b, d = d, b
        dummy_rot[i] = [piece[(e1, a)], piece[(e2, b)], piece[(e1, c)], piece[(e2, d)]]
    rot = [[piece[(e, v)] for e in rotation[v]] for v in range(n)] + dummy_rot
    return PlaneGraph(n + len(crossings), new_edges, rot), half_of


def _face_count(pg: PlaneGraph) -> int:
    try:
        return len(pg.faces)
    except EulerViolation:
        return -1


def build_embedding(
    graph: Graph,
    rotation: Sequence[Sequence[int]],
    crossings: Sequence[Sequence[int]] = (),
    outer_face: int | None = None,
    check_density: bool = True,
) -> Embedding:
    """Validate a 1-planar embedding witness and planarize it.

    Crossing convention: for a pair ``(e1, e2)`` the clockwise order around
    the crossing point is ``e1[0], e2[0], e1[1], e2[1]``.  If the rotation
    system disagrees, individual crossings are mirrored greedily until the
    planarization satisfies Euler's formula.
    """
    n = graph.n
    if n < 3:
        raise ValidationError("need at least 3 vertices")
    seen_pairs: set[frozenset[int]] = set()
    for u, v in graph.edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValidationError(f"edge ({u},{v}) out of range")
        if u == v:
            raise NotSimple(f"self-loop at {u}")
        p = frozenset((u, v))
        if p in seen_pairs:
            raise NotSimple(f"parallel edge {u}-{v}")
        seen_pairs.add(p)
    if check_density and len(graph.edges) > 4 * n - 8:
        raise DensityViolation(f"{len(graph.edges)} edges exceed 4n-8 = {4 * n - 8}")
    if len(rotation) != n:
        raise ValidationError("rotation must list every vertex")
    for v in range(n):
        if sorted(rotation[v]) != sorted(graph.incident[v]):
            raise ValidationError(f"rotation at {v} is not a permutation of its edges")
    pairs = [tuple(int(x) for x in c) for c in crossings]
    used: set[int] = set()
    for c in pairs:
        if len(c) != 2:
            raise ValidationError("crossing must name two edges")
        e1, e2 = c
        for e in (e1, e2):
            if not 0 <= e < len(graph.edges):
                raise ValidationError(f"crossing references unknown edge {e}")
            if e in used:
                raise DuplicateCrossing(f"edge {e} is in two crossing pairs")
            used.add(e)
        if e1 == e2:
            raise DuplicateCrossing(f"edge {e1} crosses itself")
        if set(graph.edges[e1]) & set(graph.edges[e2]):
            raise NotSimple(f"adjacent edges {e1} and {e2} cross")
    if not is_biconnected(n, graph.edges):
        raise NotTwoConnected("graph is not 2-connected")

    flips = [False] * len(pairs)
    pg, half_of = _planarize(graph, rotation, pairs, flips)
    if not (_face_count(pg) > 0 and pg.euler_ok()):
        best = _face_count(pg)
        for i in range(len(pairs)):
            flips[i] = True
            cand, h = _planarize(graph, rotation, pairs, flips)
            fc = _face_count(cand)
            if fc > best:
                best, pg, half_of = fc, cand, h
            else:
                flips[i] = False
        if not (_face_count(pg) > 0 and pg.euler_ok()):
            raise EulerViolation("planarization violates Euler's formula")
    if outer_face is not None:
        if not 0 <= outer_face < len(pg.faces):
            raise ValidationError(f"outer face {outer_face} does not exist")
        pg.outer_dart = pg.faces[outer_face][0]
    else:
        pg.outer_dart = pg.faces[default_outer_face(pg.faces)][0]
    return Embedding(
        graph=graph,
        rotation=tuple(tuple(r) for r in rotation),
        crossings=tuple(pairs),
        plane=pg,
        half_of=tuple(half_of),
        flips=tuple(flips),
    )


def mirror_embedding(emb: Embedding) -> Embedding:
    """The mirror image: every rotation reversed, same vertex and edge ids."""
    rotation = tuple(tuple(reversed(r)) for r in emb.rotation)
    flips = [not f for f in emb.flips] if emb.flips else [True] * len(emb.crossings)
    pg, half_of = _planarize(emb.graph, rotation, emb.crossings, flips)
    if emb.plane.outer_dart is not None:
        pg.outer_dart = emb.plane.outer_dart ^ 1
    return Embedding(emb.graph, rotation, emb.crossings, pg, tuple(half_of), tuple(flips))


def planarize(emb: Embedding) -> Embedding:
    """Return the planarization as a crossing-free embedding (identity if planar)."""
    if not emb.crossings:
        return emb
    pg = emb.plane
    g = Graph(pg.n, pg.edges)
    out = build_embedding(g, pg.rotation, (), None, check_density=False)
    out.plane.outer_dart = pg.outer_dart
    return out


def embedding_from_plane(pg: PlaneGraph) -> Embedding:
    """Wrap a crossing-free plane graph as an Embedding."""
    return Embedding(
        graph=Graph(pg.n, pg.edges, pg.tags),
        rotation=pg.rotation,
        crossings=(),
        plane=pg,
        half_of=tuple(range(pg.m)),
    )


# ---------------------------------------------------------------------------
# duals


@dataclass(frozen=True, eq=False)
class DualGraph:
    """One node per face; for each edge oriented u->v, its left and right face."""

    num_faces: int
    left: tuple[int, ...]
    right: tuple[int, ...]

    def arcs(self) -> list[tuple[int, int]]:
        return list(zip(self.left, self.right))


def dual(pg: PlaneGraph, delta: Sequence[int] | None = None) -> DualGraph:
    """Dual of a 2-connected plane graph; edges oriented low->high by ``delta``."""
    if not is_biconnected(pg.n, pg.edges):
        raise NotTwoConnected("dual requires a 2-connected embedding")
    face_of = pg.face_of
    left = []
    right = []
    for e, (u, v) in enumerate(pg.edges):
        d = 2 * e
        if delta is not None and delta[u] > delta[v]:
            d = 2 * e + 1
        right.append(face_of[d])
        left.append(face_of[d ^ 1])
    return DualGraph(len(pg.faces), tuple(left), tuple(right))
