"""Geometry records shared by the drawers, the verifier and the I/O layer."""

from __future__ import annotations

from dataclasses import dataclass, field

MODES = ("planar", "flat_rectangle", "t_shape")


@dataclass(frozen=True)
class ShapePolygon:
    """A horizontal bar ``(y, x0, x1)`` with an optional vertical pylon ``(x, y0, y1)``.

    The pylon attaches to the bar at one of its ends: normally ``y0`` equals
    the bar level (a ⊥ or L shape); after a vertical flip ``y1`` does.
    """

    v: int
    bar: tuple[int, int, int]
    pylon: tuple[int, int, int] | None = None

    @property
    def y(self) -> int:
        return self.bar[0]

    def segments(self) -> list[tuple[str, int, int, int]]:
        y, x0, x1 = self.bar
        segs = [("h", y, x0, x1)]
        if self.pylon is not None:
            x, y0, y1 = self.pylon
            segs.append(("v", x, y0, y1))
        return segs

    def contains(self, x: int, y: int) -> bool:
        by, x0, x1 = self.bar
        if y == by and x0 <= x <= x1:
            return True
        if self.pylon is not None:
            px, y0, y1 = self.pylon
            if x == px and y0 <= y <= y1:
                return True
        return False


@dataclass(frozen=True)
class SightSegment:
    """Line of sight for edge ``edge = (u, v)``; ``lo`` lies on ``u``, ``hi`` on ``v``."""

    edge: tuple[int, int]
    dir: str
    at: int
    lo: int
    hi: int
    eid: int = -1

    def endpoints(self) -> tuple[tuple[int, int], tuple[int, int]]:
        if self.dir == "v":
            return (self.at, self.lo), (self.at, self.hi)
        return (self.lo, self.at), (self.hi, self.at)


@dataclass(frozen=True)
class VisibilityRepresentation:
    mode: str
    n: int
    polygons: tuple[ShapePolygon, ...]
    sights: tuple[SightSegment, ...]
    dropped: tuple[SightSegment, ...] = field(default=())
    flipped: bool = False

    @property
    def bounds(self) -> tuple[int, int]:
        """Spans ``[W, H]`` of the drawing; coordinates start at 0."""
        xs, ys = [0], [0]
        for p in self.polygons:
            y, x0, x1 = p.bar
            xs += [x0, x1]
            ys.append(y)
            if p.pylon is not None:
                px, y0, y1 = p.pylon
                xs.append(px)
                ys += [y0, y1]
        for s in self.sights:
            (a, b), (c, d) = s.endpoints()
            xs += [a, c]
            ys += [b, d]
        return max(xs) - min(xs), max(ys) - min(ys)

    def polygon(self, v: int) -> ShapePolygon:
        return self.polygons[v]


def flip_vertical(rep: VisibilityRepresentation) -> VisibilityRepresentation:
    """Mirror top to bottom, turning ⊥ shapes into T shapes."""
    _, h = rep.bounds
    polys = []
    for p in rep.polygons:
        y, x0, x1 = p.bar
        pylon = None
        if p.pylon is not None:
            x, y0, y1 = p.pylon
            pylon = (x, h - y1, h - y0)
        polys.append(ShapePolygon(p.v, (h - y, x0, x1), pylon))

    def flip_sight(s: SightSegment) -> SightSegment:
        if s.dir == "v":
            return SightSegment((s.edge[1], s.edge[0]), "v", s.at, h - s.hi, h - s.lo, s.eid)
        return SightSegment(s.edge, "h", h - s.at, s.lo, s.hi, s.eid)

    return VisibilityRepresentation(
        rep.mode,
        rep.n,
        tuple(polys),
        tuple(flip_sight(s) for s in rep.sights),
        tuple(flip_sight(s) for s in rep.dropped),
        not rep.flipped,
    )


def mirror_horizontal(rep: VisibilityRepresentation) -> VisibilityRepresentation:
    """Mirror left to right (x -> W - x)."""
    w, _ = rep.bounds
    polys = []
    for p in rep.polygons:
        y, x0, x1 = p.bar
        pylon = None if p.pylon is None else (w - p.pylon[0], p.pylon[1], p.pylon[2])
        polys.append(ShapePolygon(p.v, (y, w - x1, w - x0), pylon))

    def flip_sight(s: SightSegment) -> SightSegment:
        if s.dir == "h":
            return SightSegment((s.edge[1], s.edge[0]), "h", s.at, w - s.hi, w - s.lo, s.eid)
        return SightSegment(s.edge, "v", w - s.at, s.lo, s.hi, s.eid)

    return VisibilityRepresentation(
        rep.mode, rep.n, tuple(polys),
        tuple(flip_sight(s) for s in rep.sights),
        tuple(flip_sight(s) for s in rep.dropped),
        rep.flipped,
    )
