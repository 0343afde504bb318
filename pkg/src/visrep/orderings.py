"""st-numberings, leftish canonical orderings, dual numberings, face classes."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    BadFaceSize,
    EdgeNotOnOuterFace,
    NotICPlanar,
    NotTwoConnected,
    OrderingDeadEnd,
    UnclassifiableFace,
)
from .graph import Embedding, PlaneGraph, is_biconnected


@dataclass(frozen=True)
class Step:
    """One path of a canonical ordering placed between contour vertices."""

    path: tuple[int, ...]  # left to right on the new contour
    left: int
    right: int
    covered: tuple[int, ...] = ()


@dataclass(frozen=True)
class VertexOrdering:
    delta: tuple[int, ...]  # vertex -> rank 1..n
    s: int
    t: int
    paths: tuple[tuple[int, ...], ...] | None = None  # in rank order
    steps: tuple[Step, ...] | None = None

    @property
    def n(self) -> int:
        return len(self.delta)

    def order(self) -> list[int]:
        out = [0] * len(self.delta)
        for v, r in enumerate(self.delta):
            out[r - 1] = v
        return out

    def path_index(self) -> dict[int, int]:
        idx = {}
        for i, p in enumerate(self.paths or ()):
            for v in p:
                idx[v] = i
        return idx


def ordering_from_order(order: Sequence[int], paths=None, steps=None) -> VertexOrdering:
    delta = [0] * len(order)
    for i, v in enumerate(order):
        delta[v] = i + 1
    return VertexOrdering(tuple(delta), order[0], order[-1],
                          tuple(paths) if paths is not None else None,
                          tuple(steps) if steps is not None else None)


def _plane(x: PlaneGraph | Embedding) -> PlaneGraph:
    if isinstance(x, Embedding):
        if x.crossings:
            raise ValueError("expected a planar embedding")
        return x.plane
    return x


def is_st_numbering(pg: PlaneGraph, ordering: VertexOrdering) -> bool:
    d = ordering.delta
    if sorted(d) != list(range(1, pg.n + 1)):
        return False
    low = [False] * pg.n
    high = [False] * pg.n
    st = False
    for u, v in pg.edges:
        if {u, v} == {ordering.s, ordering.t}:
            st = True
        a, b = (u, v) if d[u] < d[v] else (v, u)
        high[a] = low[b] = True
    if d[ordering.s] != 1 or d[ordering.t] != pg.n or not st:
        return False
    return all(low[v] and high[v] for v in range(pg.n) if v not in (ordering.s, ordering.t))


# ---------------------------------------------------------------------------
# st-numbering


def _outer_st_dart(pg: PlaneGraph, s: int, t: int) -> int:
    walk = pg.faces[pg.outer_face]
    for d in walk:
        if {pg.tail(d), pg.head(d)} == {s, t}:
            return d
    raise EdgeNotOnOuterFace(f"edge {{{s},{t}}} is not on the outer face")


def st_number(pg: PlaneGraph | Embedding, s: int, t: int) -> VertexOrdering:
    """st-numbering whose inner components at separation pairs form blocks."""
    pg = _plane(pg)
    if not is_biconnected(pg.n, pg.edges):
        raise NotTwoConnected("st-numbering needs a 2-connected graph")
    _outer_st_dart(pg, s, t)
    n = pg.n
    adj = [[pg.other(e, v) for e in pg.rotation[v]] for v in range(n)]
    # depth-first search with t as the first child of s
    pre = [-1] * n
    parent = [-1] * n
    low = list(range(n))
    order: list[int] = []
    adj_s = [t] + [w for w in adj[s] if w != t]
    pre[s] = 0
    order.append(s)
    stack = [(s, iter(adj_s))]
    while stack:
        v, it = stack[-1]
        advanced = False
        for w in it:
            if pre[w] == -1:
                pre[w] = len(order)
                order.append(w)
                parent[w] = v
                stack.append((w, iter(adj[w])))
                advanced = True
                break
            if w != parent[v] and pre[w] < pre[low[v]]:
                low[v] = w
        if advanced:
            continue
        stack.pop()
        p = parent[v]
        if p >= 0 and pre[low[v]] < pre[low[p]]:
            low[p] = low[v]
    # list insertion
    nxt = [-1] * n
    prv = [-1] * n
    nxt[s], prv[t] = t, s
    sign = [0] * n
    sign[s] = -1
    for v in order[2:]:
        p = parent[v]
        if sign[low[v]] == -1:
            a, b = prv[p], p  # insert before p
            sign[p] = 1
        else:
            a, b = p, nxt[p]  # insert after p
            sign[p] = -1
        prv[v], nxt[v] = a, b
        if a >= 0:
            nxt[a] = v
        if b >= 0:
            prv[b] = v
    seq = []
    v = s
    while v != -1:
        seq.append(v)
        v = nxt[v]
    first = ordering_from_order(seq)
    return _block_order(pg, first)


def _block_order(pg: PlaneGraph, ordering: VertexOrdering) -> VertexOrdering:
    """Re-sort by reverse DFS postorder of the bipolar orientation.

    Out-edges are scanned clockwise from the first one after the incoming
    block, so inner components at separation pairs become consecutive.
    """
    d = ordering.delta
    n = pg.n
    s, t = ordering.s, ordering.t
    outs: list[list[int]] = []
    for v in range(n):
        r = pg.rotation[v]
        nb = [pg.other(e, v) for e in r]
        up = [d[w] > d[v] for w in nb]
        k = len(r)
        start = 0
        if v == s:
            start = next((i + 1 for i, w in enumerate(nb) if w == t), 0)
        else:
            for i in range(k):
                if up[i] and not up[i - 1]:
                    start = i
                    break
        outs.append([nb[(start + i) % k] for i in range(k) if up[(start + i) % k]])
    seen = [False] * n
    post: list[int] = []
    seen[s] = True
    stack = [(s, iter(outs[s]))]
    while stack:
        v, it = stack[-1]
        for w in it:
            if not seen[w]:
                seen[w] = True
                stack.append((w, iter(outs[w])))
                break
        else:
            stack.pop()
            post.append(v)
    post.reverse()
    return ordering_from_order(post)


# ---------------------------------------------------------------------------
# dual numbering


@dataclass(frozen=True)
class DualNumbering:
    delta_star: tuple[int, ...]  # face -> 1..M
    s_star: int
    t_star: int
    left_e: tuple[int, ...]  # edge -> dual number of the face to its left
    right_e: tuple[int, ...]
    left_v: tuple[int, ...]
    right_v: tuple[int, ...]

    @property
    def m_faces(self) -> int:
        return len(self.delta_star)


def edge_faces(pg: PlaneGraph, delta: Sequence[int]) -> tuple[list[int], list[int]]:
    """(left face, right face) ids for every edge oriented low -> high."""
    fo = pg.face_of
    left, right = [], []
    for e, (u, v) in enumerate(pg.edges):
        d_up = 2 * e if delta[u] < delta[v] else 2 * e + 1
        right.append(fo[d_up])
        left.append(fo[d_up ^ 1])
    return left, right


def dual_st_numbering(pg: PlaneGraph | Embedding, ordering: VertexOrdering) -> DualNumbering:
    pg = _plane(pg)
    s, t = ordering.s, ordering.t
    d = ordering.delta
    st_dart = _outer_st_dart(pg, s, t)
    outer = pg.outer_face
    lf, rf = edge_faces(pg, d)
    st_edges = {e for e, (u, v) in enumerate(pg.edges) if {u, v} == {s, t}}
    # the st edge on the outer face has the outer face on its left
    st_outer_edge = st_dart >> 1
    if lf[st_outer_edge] != outer:
        raise EdgeNotOnOuterFace("edge {s,t} must have the outer face on its left (s = v1, t = vn)")
    s_star = rf[st_outer_edge]
    nf = len(pg.faces)
    succ: list[list[int]] = [[] for _ in range(nf)]
    indeg = [0] * nf
    for e in range(pg.m):
        if e == st_outer_edge:
            continue
        a, b = lf[e], rf[e]
        if a == b:
            continue
        succ[a].append(b)
        indeg[b] += 1
    num = [0] * nf
    queue = [f for f in range(nf) if indeg[f] == 0]
    heapq.heapify(queue)
    k = 0
    while queue:
        f = heapq.heappop(queue)
        k += 1
        num[f] = k
        for g in succ[f]:
            indeg[g] -= 1
            if indeg[g] == 0:
                heapq.heappush(queue, g)
    if k != nf or num[s_star] != 1 or num[outer] != nf:
        raise OrderingDeadEnd("dual graph is not an s*t*-graph; embedding inconsistent with numbering")
    le = tuple(num[f] for f in lf)
    re = tuple(num[f] for f in rf)
    lv = [nf + 1] * pg.n
    rv = [0] * pg.n
    for e, (u, v) in enumerate(pg.edges):
        if e in st_edges and e == st_outer_edge:
            continue
        for w in (u, v):
            lv[w] = min(lv[w], le[e])
            rv[w] = max(rv[w], re[e])
    for w in (s, t):
        lv[w], rv[w] = 1, nf
    return DualNumbering(tuple(num), s_star, outer, le, re, tuple(lv), tuple(rv))


# ---------------------------------------------------------------------------
# leftish canonical ordering


class _Contour:
    """Doubly linked contour with order-maintenance labels."""

    GAP = 1 << 40

    def __init__(self, n: int, a: int, b: int) -> None:
        self.left = [-1] * n
        self.right = [-1] * n
        self.label = [0] * n
        self.on = [False] * n
        self.head = a
        self.left[b], self.right[a] = a, b
        self.label[a], self.label[b] = 0, self.GAP
        self.on[a] = self.on[b] = True
        self.version = 0

    def insert_between(self, a: int, b: int, new: Sequence[int]) -> None:
        # drop everything strictly between a and b
        v = self.right[a]
        while v != b:
            self.on[v] = False
            v = self.right[v]
        prev = a
        for z in new:
            self.right[prev], self.left[z] = z, prev
            self.on[z] = True
            prev = z
        self.right[prev], self.left[b] = b, prev
        lo, hi = self.label[a], self.label[b]
        k = len(new)
        if hi - lo <= k:
            self._relabel()
            return
        step = (hi - lo) // (k + 1)
        for i, z in enumerate(new):
            self.label[z] = lo + step * (i + 1)

    def _relabel(self) -> None:
        v, i = self.head, 0
        while v != -1:
            self.label[v] = i * self.GAP
            v = self.right[v]
            i += 1
        self.version += 1

    def between(self, a: int, b: int) -> list[int]:
        out = []
        v = self.right[a]
        while v != b and v != -1:
            out.append(v)
            v = self.right[v]
        return out

    def sequence(self) -> list[int]:
        out, v = [], self.head
        while v != -1:
            out.append(v)
            v = self.right[v]
        return out


def _outer_walk(pg: PlaneGraph, outer_dart: int | None) -> tuple[int, list[int]]:
    d0 = outer_dart if outer_dart is not None else pg.outer_dart
    if d0 is None:
        d0 = pg.faces[pg.outer_face][0]
    f = pg.face_of[d0]
    walk = pg.faces[f]
    i = walk.index(d0)
    return f, walk[i:] + walk[:i]


def leftish_canonical_ordering(pg: PlaneGraph | Embedding, outer_dart: int | None = None) -> VertexOrdering:
    """Leftish canonical ordering from the outer dart v1 -> v2.

    The outer face walk is ``v1, v2, ..., vn``.  Each step places the feasible
    candidate whose left contour neighbour lies furthest left; ties go to
    the lexicographically smallest vertex set.  Length-two paths over a
    quadrangle are ranked so that the quadrangle becomes a rhomboid.
    """
    pg = _plane(pg)
    n = pg.n
    outer, walk = _outer_walk(pg, outer_dart)
    v1, v2 = pg.tail(walk[0]), pg.head(walk[0])
    vn = pg.tail(walk[-1])
    if n == 2:
        return ordering_from_order([v1, v2], [(v1, v2)], [])
    faces: list[tuple[int, ...]] = []
    vfaces: list[list[int]] = [[] for _ in range(n)]
    for f, w in enumerate(pg.faces):
        if f == outer:
            continue
        if len(w) > 4:
            raise BadFaceSize(f"inner face of size {len(w)}")
        fid = len(faces)
        verts = tuple(pg.tail(d) for d in w)
        faces.append(verts)
        for v in set(verts):
            vfaces[v].append(fid)
    nbrs = [sorted({pg.other(e, v) for e in pg.rotation[v]}) for v in range(n)]
    deg = [len(x) for x in nbrs]
    done = [False] * n
    A = [0] * n
    B = [0] * n
    pc = [0] * len(faces)
    rank: list[int] = []
    paths: list[tuple[int, ...]] = []
    steps: list[Step] = []
    cont = _Contour(n, v1, v2)
    heap: list[tuple] = []
    pending: set[tuple[str, int]] = set()

    def key_of(kind: str, x: int):
        if kind == "v":
            ps = [w for w in nbrs[x] if done[w]]
            if not ps or not all(cont.on[w] for w in ps):
                return None
            cl = min(ps, key=lambda w: cont.label[w])
            return (cont.label[cl], (x,))
        f = faces[x]
        proc = [v for v in f if done[v]]
        if len(proc) != 2 or not all(cont.on[v] for v in proc):
            return None
        cl = min(proc, key=lambda w: cont.label[w])
        zs = tuple(sorted(v for v in f if not done[v]))
        return (cont.label[cl], zs)

    def push(kind: str, x: int) -> None:
        k = key_of(kind, x)
        if k is not None:
            heapq.heappush(heap, (k[0], k[1], kind, x, cont.version))

    def rebuild() -> None:
        items = {(kind, x) for _, _, kind, x, _ in heap}
        heap.clear()
        for kind, x in items:
            push(kind, x)

    fverts = [tuple(pg.tail(d) for d in w) for w in pg.faces]

    def splits_rest(group: Sequence[int]) -> bool:
        """Placing ``group`` would disconnect the unprocessed remainder.

        A face between two consecutive unprocessed neighbours of a placed
        vertex that also touches the processed part closes a curve
        separating those neighbours.
        """
        gs = set(group)
        for z in group:
            rot = pg.rotation[z]
            k = len(rot)
            high = [not done[u] and u not in gs for u in (pg.other(e, z) for e in rot)]
            for i in range(k):
                if high[i] and high[(i + 1) % k]:
                    f = pg.face_of[pg.out_dart(z, rot[i])]
                    if f == outer:
                        return True
                    if any((done[u] or u in gs) and u != z for u in fverts[f]):
                        return True
        return False

    def valid_single(z: int) -> tuple[int, int] | None:
        if done[z]:
            return None
        if z == vn and len(rank) != n - 1:
            return None
        if A[z] < 2 or B[z] != A[z] - 1:
            return None
        if z != vn and deg[z] == A[z]:
            return None
        ps = [w for w in nbrs[z] if done[w]]
        if not all(cont.on[w] for w in ps):
            return None
        ps.sort(key=lambda w: cont.label[w])
        cl, cr = ps[0], ps[-1]
        inner = set(cont.between(cl, cr))
        if any(w not in inner for w in ps[1:-1]):
            return None
        # covered vertices must not keep unprocessed neighbours besides z
        for w in inner:
            if any(not done[u] and u != z for u in nbrs[w]):
                return None
        if z != vn and splits_rest([z]):
            return None
        return cl, cr

    def valid_chain(fid: int):
        f = faces[fid]
        if len(f) != 4 or pc[fid] != 2:
            return None
        k = [i for i in range(4) if done[f[i]]]
        if len(k) != 2 or (k[1] - k[0]) not in (1, 3):
            return None
        # rotate so that f = (p, q, z_q, z_p) with p, q processed and adjacent
        i = k[0] if k[1] - k[0] == 1 else k[1]
        p, q, zq, zp = f[i], f[(i + 1) % 4], f[(i + 2) % 4], f[(i + 3) % 4]
        if not (cont.on[p] and cont.on[q]):
            return None
        if cont.right[p] == q:
            cl, cr, zl, zr = p, q, zp, zq
        elif cont.right[q] == p:
            cl, cr, zl, zr = q, p, zq, zp
        else:
            return None
        if n == 4 and len(rank) == 2 and vn in (zl, zr):
            return cl, cr, zl, zr  # closing chain of a bare cycle
        for z in (zl, zr):
            if z == vn or A[z] != 1 or deg[z] - 2 < 1:
                return None
        if splits_rest([zl, zr]):
            return None
        return cl, cr, zl, zr

    def place(v: int) -> None:
        done[v] = True
        rank.append(v)
        for w in nbrs[v]:
            A[w] += 1
            if not done[w]:
                push("v", w)
        for fid in vfaces[v]:
            pc[fid] += 1
            f = faces[fid]
            if pc[fid] == len(f) - 1:
                z = next(u for u in f if not done[u])
                B[z] += 1
                push("v", z)
            elif len(f) == 4 and pc[fid] == 2:
                push("f", fid)

    place(v1)
    place(v2)
    paths.append((v1, v2))
    rescanned = False
    while len(rank) < n:
        if not heap:
            if rescanned:
                raise OrderingDeadEnd(f"no feasible candidate after {len(rank)} of {n} vertices")
            rescanned = True
            for z in range(n):
                if not done[z] and A[z] >= 1:
                    push("v", z)
            for fid, f in enumerate(faces):
                if len(f) == 4 and pc[fid] == 2:
                    push("f", fid)
            continue
        lab, zs, kind, x, ver = heapq.heappop(heap)
        if ver != cont.version:
            rebuild()
            continue
        k = key_of(kind, x)
        if k is None:
            continue
        if k != (lab, zs):
            heapq.heappush(heap, (k[0], k[1], kind, x, cont.version))
            continue
        if kind == "v":
            r = valid_single(x)
            if r is None:
                continue
            cl, cr = r
            covered = tuple(cont.between(cl, cr))
            cont.insert_between(cl, cr, [x])
            place(x)
            paths.append((x,))
            steps.append(Step((x,), cl, cr, covered))
        else:
            r = valid_chain(x)
            if r is None:
                continue
            cl, cr, zl, zr = r
            cont.insert_between(cl, cr, [zl, zr])
            d = {v: i for i, v in enumerate(rank)}
            first, second = (zr, zl) if d[cr] < d[cl] else (zl, zr)
            if first == vn:
                first, second = second, first
            place(first)
            place(second)
            paths.append((first, second))
            steps.append(Step((zl, zr), cl, cr, ()))
        rescanned = False
        if ver != cont.version:
            rebuild()
    if rank[-1] != vn:
        raise OrderingDeadEnd("last vertex is not vn")
    return ordering_from_order(rank, paths, steps)


# ---------------------------------------------------------------------------
# extension over separation pairs


def _child_outer_dart(piece: PlaneGraph, rep: int, x: int, y: int) -> int:
    """Dart x -> v2 of the face to the right of y -> x along the merged edge."""
    d = 2 * rep if piece.edges[rep] == (y, x) else 2 * rep + 1
    return piece.next_dart(d)


def extend_ordering(tree, piece_orderings: dict[int, VertexOrdering] | None = None,
                    root_outer_dart: int | None = None,
                    outer_darts: dict[int, int] | None = None) -> VertexOrdering:
    """Extended leftish ordering of G□ over the decomposition tree.

    ``piece_orderings`` and ``outer_darts`` (if given) are filled with the
    local ordering and the outer dart v1 -> v2 of every tree node.  Each inner component at a separation pair [x, y] (x below y) is ordered
    with outer face right of y -> x and inserted as a block just before the
    path containing y.  Components at the same pair keep the clockwise order
    at x.  Nested pairs are handled recursively in post-order.
    """
    computed: dict[int, VertexOrdering] = {} if piece_orderings is None else piece_orderings

    def run(idx: int, outer_dart: int | None) -> tuple[list[tuple[int, ...]], list[Step]]:
        node = tree.nodes[idx]
        l2g = node.local_to_global
        if idx not in computed:
            computed[idx] = leftish_canonical_ordering(node.piece, outer_dart)
        if outer_darts is not None:
            outer_darts[idx] = node.piece.outer_dart if outer_dart is None else outer_dart
        o = computed[idx]
        local_of = {g: i for i, g in enumerate(l2g)}
        blocks: dict[int, list[tuple[int, ...]]] = {}
        steps = [Step(tuple(l2g[v] for v in st.path), l2g[st.left], l2g[st.right],
                      tuple(l2g[v] for v in st.covered)) for st in (o.steps or ())]
        for c in node.children:
            child = tree.nodes[c]
            a, b = child.pair
            la, lb = local_of[a], local_of[b]
            x, y = (a, b) if o.delta[la] < o.delta[lb] else (b, a)
            cl = {g: i for i, g in enumerate(child.local_to_global)}
            od = _child_outer_dart(child.piece, child.rep_edge, cl[x], cl[y])
            cpaths, csteps = run(c, od)
            inner = [tuple(v for v in p if v not in (x, y)) for p in cpaths]
            blocks.setdefault(y, []).extend(p for p in inner if p)
            steps.extend(csteps)
        out: list[tuple[int, ...]] = []
        for p in o.paths or ():
            gp = tuple(l2g[v] for v in p)
            cut = 0
            for i, v in enumerate(gp):
                if v in blocks:
                    # x and y on one path: split it between them
                    if gp[cut:i]:
                        out.append(gp[cut:i])
                    out.extend(blocks.pop(v))
                    cut = i
            out.append(gp[cut:])
        return out, steps

    if root_outer_dart is None:
        root_outer_dart = tree.nodes[tree.root].piece.outer_dart
    paths, steps = run(tree.root, root_outer_dart)
    order = [v for p in paths for v in p]
    return ordering_from_order(order, paths, steps)


# ---------------------------------------------------------------------------
# face classification


@dataclass(frozen=True)
class FaceClass:
    face: int
    kind: str  # triangle | rhomboid | left_trapezoid | right_trapezoid
    bottom: int
    top: int
    left_chain: tuple[int, ...]  # vertices strictly between bottom and top on the left
    right_chain: tuple[int, ...]
    support: tuple[bool, bool] = (False, False)
    closing_time: int | None = None

    @property
    def left_end(self) -> int | None:
        return self.left_chain[0] if self.kind == "rhomboid" else None

    @property
    def right_end(self) -> int | None:
        return self.right_chain[0] if self.kind == "rhomboid" else None


def face_class_of(verts: Sequence[int], delta: Sequence[int], face: int = -1) -> FaceClass:
    """Classify one clockwise face boundary by its numbering."""
    k = len(verts)
    i0 = min(range(k), key=lambda i: delta[verts[i]])
    w = list(verts[i0:]) + list(verts[:i0])
    j = max(range(k), key=lambda i: delta[w[i]])
    left = w[: j + 1]
    right = [w[0]] + w[j:][::-1]
    if any(delta[a] >= delta[b] for a, b in zip(left, left[1:])) or any(
        delta[a] >= delta[b] for a, b in zip(right, right[1:])
    ):
        raise UnclassifiableFace(f"face {face} {tuple(verts)} is not bipolar")
    lc, rc = tuple(left[1:-1]), tuple(right[1:-1])
    if k == 3:
        kind = "triangle"
    elif k == 4:
        kind = {2: "rhomboid", 3: "left_trapezoid", 1: "right_trapezoid"}[j]
    else:
        raise UnclassifiableFace(f"face {face} has {k} vertices")
    return FaceClass(face, kind, w[0], w[j], lc, rc)


def _contour_pairs(ordering: VertexOrdering) -> set[tuple[int, int]]:
    pairs: set[tuple[int, int]] = set()
    if not ordering.paths:
        return pairs
    for st in ordering.steps or ():
        seq = [st.left, *st.path, st.right]
        pairs.update(zip(seq, seq[1:]))
    p0 = ordering.paths[0]
    if len(p0) == 2:
        pairs.add((p0[0], p0[1]))
    return pairs


def classify_faces(pg: PlaneGraph | Embedding, ordering: VertexOrdering) -> list[FaceClass]:
    """Classes of all inner faces; support flags from the contour history."""
    pg = _plane(pg)
    outer = pg.outer_face
    pairs = _contour_pairs(ordering)
    pidx = ordering.path_index() if ordering.paths else {}
    out = []
    for f, walk in enumerate(pg.faces):
        if f == outer:
            continue
        verts = [pg.tail(d) for d in walk]
        fc = face_class_of(verts, ordering.delta, f)
        b = fc.bottom
        # neighbours of the bottom along the two sides of the face
        bl = fc.left_chain[0] if fc.left_chain else fc.top
        br = fc.right_chain[0] if fc.right_chain else fc.top
        lsup = (bl, b) in pairs
        rsup = (b, br) in pairs
        out.append(FaceClass(f, fc.kind, fc.bottom, fc.top, fc.left_chain, fc.right_chain,
                             (lsup, rsup), pidx.get(fc.top)))
    return out


# ---------------------------------------------------------------------------
# bitonic check


@dataclass(frozen=True)
class BitonicViolation:
    vertex: int
    sequence: tuple[int, ...]


def _is_bitonic(seq: Sequence[int]) -> bool:
    """An increasing run then a decreasing run, every value of the first
    below every value of the second (either run may be empty)."""
    z = len(seq)
    inc = 1 if z else 0
    while inc < z and seq[inc] > seq[inc - 1]:
        inc += 1
    dec = z - 1 if z else 0
    while dec > 0 and seq[dec - 1] > seq[dec]:
        dec -= 1
    return any(m in (0, z) or seq[m - 1] < seq[-1] for m in range(dec, inc + 1))


def check_bitonic(ordering: VertexOrdering, pg: PlaneGraph | Embedding) -> list[BitonicViolation]:
    """Clockwise upper-neighbour sequences that are not bitonic on some contour."""
    pg = _plane(pg)
    d = ordering.delta
    pidx = ordering.path_index() if ordering.paths else {}
    out = []
    for v in range(pg.n):
        rot = pg.rotation[v]
        nb = [pg.other(e, v) for e in rot]
        same = pidx.get(v)
        up = [d[w] > d[v] and (same is None or pidx.get(w) != same) for w in nb]
        k = len(nb)
        if not any(up):
            continue
        if all(up):
            start = 0
        else:
            start = next(i for i in range(k) if up[i] and not up[i - 1])
        seq = []
        for i in range(k):
            j = (start + i) % k
            if not up[j]:
                break
            seq.append(d[nb[j]])
        if sum(up) != len(seq):
            out.append(BitonicViolation(v, tuple(seq)))
            continue
        # every later contour drops the smallest remaining upper neighbours
        for thr in sorted(set(seq)):
            sub = [x for x in seq if x >= thr]
            if not _is_bitonic(sub):
                out.append(BitonicViolation(v, tuple(seq)))
                break
    return out


def check_bitonic_tree(tree, piece_orderings: dict[int, VertexOrdering]) -> list[BitonicViolation]:
    """Bitonic check inside every piece of a decomposition tree, in G□ ids."""
    out = []
    for idx, o in sorted(piece_orderings.items()):
        l2g = tree.nodes[idx].local_to_global
        out.extend(BitonicViolation(l2g[b.vertex], b.sequence)
                   for b in check_bitonic(o, tree.nodes[idx].piece))
    return out


# ---------------------------------------------------------------------------
# IC: kite expansion and rhomboidal numbering


@dataclass(frozen=True)
class KiteRoles:
    bottom: int
    left: int
    right: int
    top: int


def kite_expand(kc, ordering_bullet: VertexOrdering, s: int | None = None,
                t: int | None = None) -> list[KiteRoles]:
    """Roles of each kite's corners under a numbering of G•.

    Exactly one corner with only incoming external edges becomes the bottom;
    otherwise exactly one corner with only outgoing ones becomes the top;
    otherwise the valid opposite pair whose bottom has the lowest numbered
    incoming neighbour wins.
    """
    sq_plane = kc.square
    db = ordering_bullet.delta
    roles = []
    for i, walk in enumerate(kc.kites):
        vk = kc.kite_vertex[i]
        ins, outs, lowest = {}, {}, {}
        kset = set(walk)
        for x in walk:
            ws = [sq_plane.other(e, x) for e in sq_plane.rotation[x]]
            ext = [kc.vertex_of[w] for w in ws if w not in kset]
            ins[x] = [db[u] for u in ext if db[u] < db[vk]]
            outs[x] = [db[u] for u in ext if db[u] > db[vk]]
            lowest[x] = min(ins[x]) if ins[x] else 0

        def valid(bi: int) -> bool:
            b, tp = walk[bi], walk[(bi + 2) % 4]
            if s in kset and b != s:
                return False
            if t in kset and tp != t:
                return False
            return (bool(ins[b]) or b == s) and (bool(outs[tp]) or tp == t)

        only_in = [j for j, x in enumerate(walk) if ins[x] and not outs[x]]
        only_out = [j for j, x in enumerate(walk) if outs[x] and not ins[x]]
        choice = None
        if len(only_in) == 1 and valid(only_in[0]):
            choice = only_in[0]
        elif len(only_out) == 1 and valid((only_out[0] + 2) % 4):
            choice = (only_out[0] + 2) % 4
        else:
            opts = [j for j in range(4) if valid(j)]
            if opts:
                choice = min(opts, key=lambda j: (lowest[walk[j]], walk[j]))
        if choice is None:
            raise OrderingDeadEnd(f"kite {walk} admits no rhomboidal expansion")
        j = choice
        roles.append(KiteRoles(walk[j], walk[(j + 1) % 4], walk[(j + 3) % 4], walk[(j + 2) % 4]))
    return roles


@dataclass(frozen=True)
class RhomboidalNumbering:
    ordering: VertexOrdering
    roles: tuple[KiteRoles, ...]
    bullet_ordering: VertexOrdering


def rhomboidal_st_numbering(aug, kc=None) -> RhomboidalNumbering:
    """st-numbering of G□ in which every kite is a rhomboid."""
    from .normal_form import kite_contract, planar_skeleton

    sk = planar_skeleton(aug)
    if kc is None:
        kc = kite_contract(aug, sk)
    sq = sk.plane
    gb = kc.plane
    if gb.n == 1 and len(kc.kites) == 1:
        # the whole graph is one kite: s and t are the ends of a crossing edge
        w = kc.kites[0]
        roles = (KiteRoles(w[0], w[1], w[3], w[2]),)
        ob = ordering_from_order([0])
        return RhomboidalNumbering(ordering_from_order([w[0], w[1], w[3], w[2]]), roles, ob)
    walk = sq.faces[sq.outer_face]
    owner = {v: i for i, k in enumerate(kc.kites) for v in k}
    darts = sorted(walk, key=lambda d: (sq.tail(d) in owner) + (sq.head(d) in owner))
    last_err: Exception | None = None
    for d in darts:
        t, s = sq.tail(d), sq.head(d)
        sb, tb = kc.vertex_of[s], kc.vertex_of[t]
        if sb == tb:
            continue
        eb = kc.edge_of.index(d >> 1)
        gd = 2 * eb + (d & 1)
        gbo = PlaneGraph(gb.n, gb.edges, gb.rotation, gd, gb.tags)
        try:
            ob = st_number(gbo, sb, tb)
            roles = kite_expand(_KC(kc, sq), ob, s, t)
        except (OrderingDeadEnd, EdgeNotOnOuterFace, NotTwoConnected) as ex:
            last_err = ex
            continue
        plain = {kc.vertex_of[v]: v for v in range(sq.n) if v not in owner}
        order = []
        for vb in ob.order():
            if vb in plain:
                order.append(plain[vb])
            else:
                r = roles[kc.kite_vertex.index(vb)]
                order.extend((r.bottom, r.left, r.right, r.top))
        o = ordering_from_order(order)
        if o.s != s or o.t != t or not is_st_numbering(sq, o):
            last_err = OrderingDeadEnd("expanded numbering is not an st-numbering")
            continue
        return RhomboidalNumbering(o, tuple(roles), ob)
    raise NotICPlanar(f"no rhomboidal st-numbering found: {last_err}")


@dataclass(frozen=True)
class _KC:
    base: object
    square: PlaneGraph

    def __getattr__(self, name):
        return getattr(self.base, name)
