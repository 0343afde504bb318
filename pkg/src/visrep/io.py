"""JSON formats: graph files, representations and derived reports.

Every writer emits UTF-8 with sorted keys and LF newlines so that files are
byte-stable across runs.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import ValidationError
from .graph import Embedding, Graph, build_embedding
from .shapes import MODES, ShapePolygon, SightSegment, VisibilityRepresentation


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":")) + "\n"


def write_json(path: str | Path, obj: Any) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8", newline="\n")


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as ex:
        raise ValidationError(f"{path}: not JSON ({ex})") from ex


# ---------------------------------------------------------------------------
# graphs


def embedding_to_dict(emb: Embedding) -> dict:
    # a mirrored crossing is written with its two edges swapped, which
    # reverses the cyclic order around the crossing point
    crossings = [
        [e2, e1] if emb.flips and emb.flips[i] else [e1, e2]
        for i, (e1, e2) in enumerate(emb.crossings)
    ]
    return {
        "n": emb.n,
        "edges": [list(e) for e in emb.graph.edges],
        "rotation": [list(r) for r in emb.rotation],
        "crossings": crossings,
        "outer_face": emb.outer_face,
    }


def embedding_from_dict(d: dict) -> Embedding:
    try:
        n = int(d["n"])
        edges = tuple((int(u), int(v)) for u, v in d["edges"])
        rotation = [[int(e) for e in r] for r in d["rotation"]]
        crossings = [[int(e) for e in c] for c in d.get("crossings", [])]
    except (KeyError, TypeError, ValueError) as ex:
        raise ValidationError(f"malformed graph file: {ex}") from ex
    outer = d.get("outer_face")
    return build_embedding(Graph(n, edges), rotation, crossings, None if outer is None else int(outer))


def graph_from_dict(d: dict) -> Graph:
    """Only the abstract graph; used to verify a representation."""
    try:
        return Graph(int(d["n"]), tuple((int(u), int(v)) for u, v in d["edges"]))
    except (KeyError, TypeError, ValueError) as ex:
        raise ValidationError(f"malformed graph file: {ex}") from ex


def load_embedding(path: str | Path) -> Embedding:
    return embedding_from_dict(read_json(path))


# ---------------------------------------------------------------------------
# representations


def rep_to_dict(rep: VisibilityRepresentation) -> dict:
    return {
        "mode": rep.mode,
        "flipped": rep.flipped,
        "polygons": [
            {"v": p.v, "bar": list(p.bar), "pylon": None if p.pylon is None else list(p.pylon)}
            for p in rep.polygons
        ],
        "sights": [
            {"edge": list(s.edge), "dir": s.dir, "at": s.at, "span": [s.lo, s.hi]}
            for s in rep.sights
        ],
        "bounds": list(rep.bounds),
    }


def rep_from_dict(d: dict) -> VisibilityRepresentation:
    try:
        mode = d["mode"]
        if mode not in MODES:
            raise ValidationError(f"unknown mode {mode!r}")
        polys = sorted(
            (
                ShapePolygon(
                    int(p["v"]),
                    tuple(int(x) for x in p["bar"]),
                    None if p.get("pylon") is None else tuple(int(x) for x in p["pylon"]),
                )
                for p in d["polygons"]
            ),
            key=lambda p: p.v,
        )
        sights = tuple(
            SightSegment(
                (int(s["edge"][0]), int(s["edge"][1])), s["dir"], int(s["at"]),
                int(s["span"][0]), int(s["span"][1]),
            )
            for s in d["sights"]
        )
    except (KeyError, TypeError, ValueError, IndexError) as ex:
        raise ValidationError(f"malformed representation: {ex}") from ex
    if [p.v for p in polys] != list(range(len(polys))):
        raise ValidationError("polygons must cover vertices 0..n-1 once each")
    for p in polys:
        if len(p.bar) != 3 or (p.pylon is not None and len(p.pylon) != 3):
            raise ValidationError(f"polygon {p.v}: bar and pylon need three integers")
    for s in sights:
        if s.dir not in ("h", "v"):
            raise ValidationError(f"sight {s.edge}: dir must be h or v")
    return VisibilityRepresentation(mode, len(polys), tuple(polys), sights, (), bool(d.get("flipped", False)))


def load_rep(path: str | Path) -> VisibilityRepresentation:
    return rep_from_dict(read_json(path))
