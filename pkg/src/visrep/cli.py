"""Command line: augment, order, draw, verify, gen, render.

Exit codes: 0 ok, 1 invalid input, 2 verification failure, 3 usage.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import asdict
from pathlib import Path

from .drawers import default_st, compact_levels, draw_planar, ic_rv_drawer, t_drawer, with_st_edge
from .errors import ValidationError, VisrepError
from .generate import KINDS, generate_instance, named, named_instances
from .io import (
    dumps,
    embedding_to_dict,
    graph_from_dict,
    load_embedding,
    load_rep,
    read_json,
    rep_to_dict,
)
from .normal_form import normal_form, planar_skeleton, undo_reroutes
from .orderings import (
    classify_faces,
    dual_st_numbering,
    extend_ordering,
    face_class_of,
    rhomboidal_st_numbering,
    st_number,
)
from .shapes import flip_vertical
from .svg import render_svg
from .verifier import check_area, verify

log = logging.getLogger("visrep")

EXIT_OK, EXIT_INVALID, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2, 3


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def _load(spec: str):
    """A graph file, or ``named:<name>`` for a built-in instance."""
    if spec.startswith("named:"):
        return named(spec[6:])
    return load_embedding(spec)


# ---------------------------------------------------------------------------
# subcommands


def cmd_augment(args: argparse.Namespace) -> int:
    aug = normal_form(_load(args.input))
    if args.undo_reroutes:
        aug = undo_reroutes(aug)
    pg = aug.plane
    doc = {
        "stage": aug.stage,
        "n": aug.n,
        "n_plane": pg.n,
        "edges": [list(e) for e in pg.edges],
        "tags": list(pg.tags),
        "origin": list(aug.origin),
        "rotation": [list(r) for r in pg.rotation],
        "outer_face": pg.outer_face,
        "crossing_classes": [asdict(c) for c in aug.classes],
        "reroutes": [asdict(r) for r in aug.reroute_log],
        "separation_pairs": [list(p) for p in aug.tree.separation_pairs()] if aug.tree else [],
    }
    _emit(dumps(doc), args.output)
    return EXIT_OK


def cmd_order(args: argparse.Namespace) -> int:
    aug = normal_form(_load(args.input))
    sk = planar_skeleton(aug)
    pg = sk.plane
    if args.mode == "st":
        s, t = default_st(pg)
        o = st_number(pg, s, t)
    elif args.mode == "leftish":
        o = extend_ordering(aug.tree)
    else:
        o = rhomboidal_st_numbering(aug).ordering
        if not any({a, b} == {o.s, o.t} for a, b in pg.edges):
            pg = with_st_edge(pg, o.s, o.t)
    dual = dual_st_numbering(pg, o)
    if o.steps is not None:
        faces = classify_faces(pg, o)
    else:
        faces = [face_class_of([pg.tail(d) for d in w], o.delta, f)
                 for f, w in enumerate(pg.faces) if f != pg.outer_face]
    doc = {
        "mode": args.mode,
        "s": o.s,
        "t": o.t,
        "delta": list(o.delta),
        "paths": [list(p) for p in o.paths] if o.paths else None,
        "delta_star": list(dual.delta_star),
        "faces": [
            {
                "face": fc.face,
                "kind": fc.kind,
                "bottom": fc.bottom,
                "top": fc.top,
                "left_chain": list(fc.left_chain),
                "right_chain": list(fc.right_chain),
                "support": list(fc.support),
            }
            for fc in faces
        ],
    }
    _emit(dumps(doc), args.output)
    return EXIT_OK


DRAWERS = {"planar": draw_planar, "ic": ic_rv_drawer, "t": t_drawer}


def cmd_draw(args: argparse.Namespace) -> int:
    emb = _load(args.input)
    rep = DRAWERS[args.mode](emb)
    if args.compact:
        rep = compact_levels(rep, emb.graph)
    if args.flip:
        rep = flip_vertical(rep)
    report = verify(rep, emb.graph)
    _emit(dumps(rep_to_dict(rep)), args.output)
    if args.svg:
        Path(args.svg).write_text(render_svg(rep), encoding="utf-8", newline="\n")
    if not report.valid:
        for v in report.violations:
            log.error("%s: %s", v.kind, v.detail)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    rep = load_rep(args.rep)
    g = graph_from_dict(read_json(args.graph))
    report = verify(rep, g)
    lines = [
        {"kind": v.kind, "detail": v.detail, "edge": list(v.edge) if v.edge else None}
        for v in report.violations
    ]
    area_ok = check_area(rep, g.n)
    if args.strict_area and not area_ok:
        w, h = rep.bounds
        lines.append({"kind": "area", "detail": f"{w}x{h} exceeds the {rep.mode} bound", "edge": None})
    lines.append({"summary": True, "valid": not lines, "violations": len(lines),
                  "sights_checked": report.sights_checked, "area_ok": area_ok})
    _emit("".join(dumps(x) for x in lines), args.output)
    return EXIT_OK if len(lines) == 1 else EXIT_VERIFY


def cmd_gen(args: argparse.Namespace) -> int:
    if args.named:
        emb = named(args.named)
    else:
        emb = generate_instance(args.n, args.seed, args.kind, kites=args.kites,
                                gadgets=args.gadgets, drop=args.drop)
    _emit(dumps(embedding_to_dict(emb)), args.output)
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    _emit(render_svg(load_rep(args.rep)), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # usage errors exit with 3
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="visrep", description="Visibility representations of 1-planar graphs.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("augment", help="normal form: planar-maximal, rerouted, triangulated")
    a.add_argument("input", help="graph JSON file or named:<instance>")
    a.add_argument("-o", "--output")
    a.add_argument("--undo-reroutes", action="store_true",
                   help="add a copy of each rerouted edge at its original place")
    a.set_defaults(func=cmd_augment)

    o = sub.add_parser("order", help="vertex ordering, dual numbering and face classes")
    o.add_argument("input")
    o.add_argument("--mode", choices=("st", "leftish", "rhomboidal"), default="leftish")
    o.add_argument("-o", "--output")
    o.set_defaults(func=cmd_order)

    d = sub.add_parser("draw", help="draw a visibility representation")
    d.add_argument("input")
    d.add_argument("--mode", choices=sorted(DRAWERS), required=True)
    d.add_argument("--compact", action="store_true", help="longest-path level compaction")
    d.add_argument("--flip", action="store_true", help="flip vertically: T instead of ⊥ shapes")
    d.add_argument("-o", "--output")
    d.add_argument("--svg")
    d.set_defaults(func=cmd_draw)

    v = sub.add_parser("verify", help="certify a representation against a graph")
    v.add_argument("rep")
    v.add_argument("graph")
    v.add_argument("--strict-area", action="store_true")
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", help="random or named instance")
    g.add_argument("--kind", choices=KINDS, default="one_planar")
    g.add_argument("-n", type=int, default=20)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--kites", type=int)
    g.add_argument("--gadgets", type=int)
    g.add_argument("--drop", type=float, default=0.0)
    g.add_argument("--named", choices=sorted(named_instances()))
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("render", help="SVG of a representation")
    r.add_argument("rep")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_render)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (ValidationError, FileNotFoundError) as ex:
        log.error("invalid input: %s", ex)
        return EXIT_INVALID
    except VisrepError as ex:
        log.error("%s: %s", type(ex).__name__, ex)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
