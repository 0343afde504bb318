"""Independent geometric certification of visibility representations.

Segment model: bars, pylons and sights are closed axis-parallel segments
with integer endpoints.  A sight may meet its own two polygons only at its
endpoints and must not meet any other polygon at all.  Horizontal and
vertical sights may cross each other; sights of the same direction must
not overlap in more than a point.
"""

from __future__ import annotations

from bisect import bisect_left
from collections import defaultdict
from dataclasses import dataclass, field

import networkx as nx

from .errors import ShapeOutOfMode
from .graph import Graph
from .shapes import ShapePolygon, SightSegment, VisibilityRepresentation


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str
    edge: tuple[int, int] | None = None
    blocker: int | None = None  # vertex whose polygon blocks the sight


@dataclass
class CertReport:
    violations: list[Violation] = field(default_factory=list)
    sights_checked: int = 0

    @property
    def valid(self) -> bool:
        return not self.violations

    def add(self, kind: str, detail: str, edge: tuple[int, int] | None = None,
            blocker: int | None = None) -> None:
        self.violations.append(Violation(kind, detail, edge, blocker))

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


class _Fenwick:
    def __init__(self, size: int) -> None:
        self.t = [0] * (size + 1)

    def add(self, i: int, d: int) -> None:
        i += 1
        while i < len(self.t):
            self.t[i] += d
            i += i & -i

    def prefix(self, i: int) -> int:
        s = 0
        i += 1
        while i > 0:
            s += self.t[i]
            i -= i & -i
        return s

    def range(self, lo: int, hi: int) -> int:
        if hi < lo:
            return 0
        return self.prefix(hi) - (self.prefix(lo - 1) if lo > 0 else 0)


def _transversal(
    verticals: list[tuple[int, int, int, object]],
    horizontals: list[tuple[int, int, int, object]],
    open_vertical: bool,
) -> list[tuple[object, object]]:
    """Pairs (vertical, horizontal) that cross.

    ``verticals`` are ``(x, y0, y1, tag)``; ``horizontals`` are ``(y, x0, x1, tag)``.
    With ``open_vertical`` the vertical ranges are open, otherwise closed;
    horizontal ranges are always closed.
    """
    if not verticals or not horizontals:
        return []
    xs = sorted({v[0] for v in verticals})
    fw = _Fenwick(len(xs))
    # events: (y, order, payload); order controls add/query/remove at equal y
    events = []
    for i, (x, y0, y1, _) in enumerate(verticals):
        if open_vertical:
            events.append((y0, 2, i))  # add after queries at y0
            events.append((y1, 0, i))  # remove before queries at y1
        else:
            events.append((y0, 0, i))
            events.append((y1, 2, i))
        # order 0 for add when closed handled below
    for j, h in enumerate(horizontals):
        events.append((h[0], 1, j))
    events.sort()
    active: set[int] = set()
    hits = []
    for y, order, k in events:
        if order == 1:
            _, x0, x1, _ = horizontals[k]
            lo = bisect_left(xs, x0)
            hi = bisect_left(xs, x1 + 1) - 1
            if fw.range(lo, hi) > 0:
                for i in active:
                    if x0 <= verticals[i][0] <= x1:
                        hits.append((verticals[i][3], horizontals[k][3]))
            continue
        x = verticals[k][0]
        adding = (order == 2) if open_vertical else (order == 0)
        if adding:
            active.add(k)
            fw.add(bisect_left(xs, x), 1)
        else:
            active.discard(k)
            fw.add(bisect_left(xs, x), -1)
    return hits


def verify(rep: VisibilityRepresentation, g: Graph) -> CertReport:
    """Certify ``rep`` as a weak visibility representation of ``g``."""
    rep_out = CertReport()
    polys = rep.polygons
    if len(polys) != g.n:
        rep_out.add("polygon_count", f"{len(polys)} polygons for {g.n} vertices")
    by_v: dict[int, ShapePolygon] = {}
    for p in polys:
        if p.v in by_v:
            rep_out.add("polygon_duplicate", f"vertex {p.v} has two polygons")
        by_v[p.v] = p
        y, x0, x1 = p.bar
        if x0 > x1:
            rep_out.add("malformed", f"bar of {p.v} has x0 > x1")
        if p.pylon is not None:
            px, y0, y1 = p.pylon
            if not y0 < y1:
                rep_out.add("malformed", f"pylon of {p.v} is degenerate")
            if not x0 <= px <= x1:
                rep_out.add("malformed", f"pylon of {p.v} misses its bar")
            if y not in (y0, y1):
                rep_out.add("malformed", f"pylon of {p.v} does not attach at an end")

    _check_disjoint(polys, rep_out)
    _check_sights(rep, g, by_v, rep_out)
    return rep_out


def _check_disjoint(polys, rep_out: CertReport) -> None:
    bars_by_y: dict[int, list[tuple[int, int, int]]] = defaultdict(list)
    pylons_by_x: dict[int, list[tuple[int, int, int]]] = defaultdict(list)
    for p in polys:
        y, x0, x1 = p.bar
        bars_by_y[y].append((x0, x1, p.v))
        if p.pylon is not None:
            x, y0, y1 = p.pylon
            pylons_by_x[x].append((y0, y1, p.v))
    for key, group in list(bars_by_y.items()) + list(pylons_by_x.items()):
        group.sort()
        reach, owner = None, None
        for a, b, v in group:
            if reach is not None and a <= reach:
                rep_out.add("overlap", f"polygons {owner} and {v} overlap at {key}")
            if reach is None or b > reach:
                reach, owner = b, v
    verticals = [(p.pylon[0], p.pylon[1], p.pylon[2], p.v) for p in polys if p.pylon is not None]
    horizontals = [(p.bar[0], p.bar[1], p.bar[2], p.v) for p in polys]
    for a, b in _transversal(verticals, horizontals, open_vertical=False):
        if a != b:
            rep_out.add("overlap", f"pylon of {a} meets bar of {b}")


def _on(poly: ShapePolygon | None, pt: tuple[int, int]) -> bool:
    return poly is not None and poly.contains(*pt)


def _check_sights(rep, g: Graph, by_v, rep_out: CertReport) -> None:
    want: dict[frozenset[int], int] = defaultdict(int)
    for u, v in g.edges:
        want[frozenset((u, v))] += 1
    have: dict[frozenset[int], int] = defaultdict(int)
    sights = list(rep.sights)
    rep_out.sights_checked = len(sights)
    for s in sights:
        u, v = s.edge
        key = frozenset((u, v))
        have[key] += 1
        if s.dir not in ("h", "v"):
            rep_out.add("malformed_sight", f"bad direction {s.dir!r}", s.edge)
            continue
        if not s.lo < s.hi:
            rep_out.add("malformed_sight", "sight has no length", s.edge)
        p_lo, p_hi = s.endpoints()
        if not _on(by_v.get(u), p_lo) or not _on(by_v.get(v), p_hi):
            rep_out.add("anchor", f"sight endpoints {p_lo},{p_hi} miss polygons", s.edge)
    for key, k in sorted(want.items(), key=lambda kv: sorted(kv[0])):
        if have.get(key, 0) < k:
            rep_out.add("missing", "edge has no line of sight", tuple(sorted(key)))
        elif have[key] > k:
            rep_out.add("duplicate", "edge has several lines of sight", tuple(sorted(key)))
    for key in sorted(set(have) - set(want), key=sorted):
        rep_out.add("extra", "line of sight for a non-edge", tuple(sorted(key)))

    polys = list(by_v.values())
    # transversal blocking
    vs = [(s.at, s.lo, s.hi, i) for i, s in enumerate(sights) if s.dir == "v" and s.lo < s.hi]
    hs = [(s.at, s.lo, s.hi, i) for i, s in enumerate(sights) if s.dir == "h" and s.lo < s.hi]
    bars = [(p.bar[0], p.bar[1], p.bar[2], p.v) for p in polys]
    pylons = [(p.pylon[0], p.pylon[1], p.pylon[2], p.v) for p in polys if p.pylon is not None]
    for i, v in _transversal(vs, bars, open_vertical=True):
        rep_out.add("blocked", f"vertical sight crosses bar of {v}", sights[i].edge, v)
    # horizontal sights against pylons: swap axes
    hs_sw = [(y, x0, x1, i) for (y, x0, x1, i) in hs]
    pyl_sw = [(x, y0, y1, v) for (x, y0, y1, v) in pylons]
    for i, v in _transversal(hs_sw, pyl_sw, open_vertical=True):
        rep_out.add("blocked", f"horizontal sight crosses pylon of {v}", sights[i].edge, v)

    # collinear overlaps
    def collinear(items_s, items_p, kind):
        groups: dict[int, list] = defaultdict(list)
        for c, a, b, i in items_s:
            groups[c].append((a, b, 0, i))
        for c, a, b, v in items_p:
            if c in groups:
                groups[c].append((a, b, 1, v))
        for c, items in groups.items():
            items.sort()
            active: list[tuple[int, int, int, int]] = []
            for it in items:
                a, b, is_poly, ident = it
                active = [x for x in active if x[1] >= a]
                for other in active:
                    _collinear_pair(it, other, sights, rep_out, kind)
                active.append(it)

    collinear(vs, pylons, "v")
    collinear(hs, bars, "h")


def _collinear_pair(it, other, sights, rep_out: CertReport, kind: str) -> None:
    a1, b1, p1, id1 = it
    a2, b2, p2, id2 = other
    lo, hi = max(a1, a2), min(b1, b2)
    if lo > hi:
        return
    if p1 and p2:
        return  # polygon-polygon handled by disjointness
    if not p1 and not p2:
        if hi > lo:
            rep_out.add("sight_overlap", f"collinear {kind} sights overlap", sights[id1].edge)
        return
    si, pv = (id1, id2) if not p1 else (id2, id1)
    s = sights[si]
    if lo == hi:
        if (lo == s.lo and pv == s.edge[0]) or (lo == s.hi and pv == s.edge[1]):
            return
    rep_out.add("blocked", f"{kind} sight runs along polygon {pv}", s.edge, pv)


# ---------------------------------------------------------------------------
# structural checks


def shape_tag(p: ShapePolygon) -> str:
    if p.pylon is None:
        return "I"
    x = p.pylon[0]
    _, x0, x1 = p.bar
    if x in (x0, x1):
        return "L"
    return "T" if p.pylon[2] == p.bar[0] else "⊥"


def check_shape_taxonomy(rep: VisibilityRepresentation) -> dict[int, str]:
    tags = {p.v: shape_tag(p) for p in rep.polygons}
    # a flipped drawing turns every ⊥ into a T
    stem = "T" if rep.flipped else "⊥"
    allowed = {"planar": {"I"}, "flat_rectangle": {"I"}, "t_shape": {"I", "L", stem}}
    bad = {v: t for v, t in tags.items() if t not in allowed.get(rep.mode, set())}
    if bad:
        raise ShapeOutOfMode(f"shapes {bad} not allowed in mode {rep.mode}")
    return tags


AREA = {
    "planar": lambda n: (2 * n - 4, n),
    "flat_rectangle": lambda n: (4 * n - 10, 2 * n),
    "t_shape": lambda n: (6 * n - 15, 2 * n),
}


def area_bound(n: int, mode: str) -> tuple[int, int]:
    return AREA[mode](n)


def check_area(rep: VisibilityRepresentation, n: int, mode: str | None = None) -> bool:
    w, h = rep.bounds
    bw, bh = area_bound(n, mode or rep.mode)
    return w <= bw and h <= bh


def check_thickness_two(rep: VisibilityRepresentation, g: Graph | None = None) -> bool:
    """The horizontal-sight and the vertical-sight subgraphs are both planar."""
    for d in ("h", "v"):
        sub = nx.Graph()
        sub.add_edges_from(s.edge for s in rep.sights if s.dir == d)
        if not nx.check_planarity(sub)[0]:
            return False
    return True
