"""Brute-force reference checks, independent of the package internals."""

from __future__ import annotations

from collections import Counter, defaultdict


def polygon_points(p) -> set[tuple[int, int]]:
    y, x0, x1 = p.bar
    pts = {(x, y) for x in range(x0, x1 + 1)}
    if p.pylon is not None:
        x, y0, y1 = p.pylon
        pts |= {(x, y) for y in range(y0, y1 + 1)}
    return pts


def sight_points(s) -> list[tuple[int, int]]:
    if s.dir == "v":
        return [(s.at, y) for y in range(s.lo, s.hi + 1)]
    return [(x, s.at) for x in range(s.lo, s.hi + 1)]


def scan_oracle(rep, edges) -> list[str]:
    """Grid scan: every integer point and unit step is checked explicitly."""
    errors = []
    owner: dict[tuple[int, int], set[int]] = defaultdict(set)
    for p in rep.polygons:
        for pt in polygon_points(p):
            owner[pt].add(p.v)
    for pt, vs in owner.items():
        if len(vs) > 1:
            errors.append(f"polygons {sorted(vs)} share point {pt}")
    used = defaultdict(list)
    for s in rep.sights:
        u, v = s.edge
        pts = sight_points(s)
        if len(pts) < 2:
            errors.append(f"sight {s.edge} has no length")
            continue
        if owner.get(pts[0]) != {u} or owner.get(pts[-1]) != {v}:
            errors.append(f"sight {s.edge} is not anchored on its endpoints")
        for pt in pts[1:-1]:
            if owner.get(pt):
                errors.append(f"sight {s.edge} passes through polygon at {pt}")
                break
        for a, b in zip(pts, pts[1:]):
            used[(s.dir, a, b)].append(s.edge)
    for key, es in used.items():
        if len(es) > 1:
            errors.append(f"sights {es} overlap along {key}")
    want = Counter(frozenset(e) for e in edges)
    have = Counter(frozenset(s.edge) for s in rep.sights)
    if want != have:
        errors.append(f"sight edge multiset differs: missing {want - have}, extra {have - want}")
    return errors


def is_st_numbering(n: int, edges, number) -> bool:
    """``number[v]`` is a bijection to 1..n, s=1 and t=n adjacent, every other
    vertex has a lower and a higher neighbour."""
    if sorted(number) != list(range(1, n + 1)):
        return False
    s = number.index(1)
    t = number.index(n)
    lower = [False] * n
    higher = [False] * n
    st = False
    for u, v in edges:
        if {u, v} == {s, t}:
            st = True
        a, b = (u, v) if number[u] < number[v] else (v, u)
        higher[a] = True
        lower[b] = True
    return st and all(lower[v] and higher[v] for v in range(n) if v not in (s, t))


def face_shape(walk_vertices, number) -> tuple[int, int]:
    """Lengths of the two chains between the bottom and top of a face whose
    boundary is increasing along both chains; (-1, -1) if not bitonic."""
    k = len(walk_vertices)
    vals = [number[v] for v in walk_vertices]
    i0 = vals.index(min(vals))
    rot = vals[i0:] + vals[:i0]
    j = rot.index(max(rot))
    left, right = rot[: j + 1], [rot[0]] + rot[j:][::-1]
    if left != sorted(left) or right != sorted(right):
        return -1, -1
    return j, k - j


def contour_replay(edges, paths) -> set[tuple[int, int]]:
    """Rebuild every contour of a canonical ordering from the graph alone and
    return all (left, right) pairs of consecutive contour vertices."""
    adj = defaultdict(set)
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    contour = list(paths[0])
    pairs = set(zip(contour, contour[1:]))
    for p in paths[1:]:
        p = list(p)
        pos = {v: i for i, v in enumerate(contour)}
        left = [pos[w] for w in adj[p[0]] if w in pos]
        right = [pos[w] for w in adj[p[-1]] if w in pos]
        if len(p) > 1 and min(left) > max(right):
            p.reverse()
            left, right = [pos[w] for w in adj[p[0]] if w in pos], [pos[w] for w in adj[p[-1]] if w in pos]
        i, j = min(left), max(right)
        contour = contour[: i + 1] + p + contour[j:]
        pairs |= set(zip(contour, contour[1:]))
    return pairs


def face_classes_oracle(walks, number, pairs) -> dict[int, tuple[str, bool, bool]]:
    """Kind and (left, right) support of each face from its vertex walk."""
    kinds = {(1, 2): "triangle", (2, 1): "triangle", (2, 2): "rhomboid",
             (3, 1): "left_trapezoid", (1, 3): "right_trapezoid"}
    out = {}
    for f, walk in walks.items():
        vals = [number[v] for v in walk]
        i0 = vals.index(min(vals))
        w = list(walk[i0:]) + list(walk[:i0])
        shape = face_shape(w, number)
        bottom, left_nb, right_nb = w[0], w[1], w[-1]
        out[f] = (kinds.get(shape, "bad"), (left_nb, bottom) in pairs, (bottom, right_nb) in pairs)
    return out
