"""Deterministic SVG rendering of a visibility representation.

Level 0 is drawn at the bottom.  Bars are 0.4 units tall, pylons 0.4 units
wide (class ``pylon``), lines of sight dashed.
"""

from __future__ import annotations

from .shapes import VisibilityRepresentation

UNIT = 24  # pixels per grid unit
MARGIN = 1  # grid units around the drawing
THICK = 0.4

STYLE = (
    ".frame{fill:none;stroke:#999;stroke-width:1}"
    ".bar{fill:#222}"
    ".pylon{fill:#1f5fbf}"
    ".sight{stroke:#c33;stroke-width:1.5;stroke-dasharray:4 3}"
    ".label{font:11px sans-serif;fill:#fff;text-anchor:middle;dominant-baseline:central}"
)


def _f(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def render_svg(rep: VisibilityRepresentation) -> str:
    xs = [0]
    ys = [0]
    for p in rep.polygons:
        xs += [p.bar[1], p.bar[2]]
        ys.append(p.bar[0])
        if p.pylon is not None:
            xs.append(p.pylon[0])
            ys += [p.pylon[1], p.pylon[2]]
    x_min, y_min = min(xs), min(ys)
    w, h = max(xs) - x_min, max(ys) - y_min
    width, height = (w + 2 * MARGIN) * UNIT, (h + 2 * MARGIN) * UNIT

    def px(x: float) -> float:
        return (x - x_min + MARGIN) * UNIT

    def py(y: float) -> float:
        return (y_min + h - y + MARGIN) * UNIT

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(width)}" height="{_f(height)}" '
        f'viewBox="0 0 {_f(width)} {_f(height)}">',
        f"<style>{STYLE}</style>",
        f'<rect class="frame" x="0.5" y="0.5" width="{_f(width - 1)}" height="{_f(height - 1)}"/>',
    ]
    half = THICK / 2
    for s in rep.sights:
        (x1, y1), (x2, y2) = s.endpoints()
        out.append(
            f'<line class="sight" data-edge="{s.edge[0]}-{s.edge[1]}" '
            f'x1="{_f(px(x1))}" y1="{_f(py(y1))}" x2="{_f(px(x2))}" y2="{_f(py(y2))}"/>'
        )
    for p in rep.polygons:
        y, x0, x1 = p.bar
        out.append(
            f'<rect class="bar" data-v="{p.v}" x="{_f(px(x0 - half))}" y="{_f(py(y + half))}" '
            f'width="{_f((x1 - x0 + THICK) * UNIT)}" height="{_f(THICK * UNIT)}"/>'
        )
        if p.pylon is not None:
            x, y0, y1 = p.pylon
            out.append(
                f'<rect class="pylon" data-v="{p.v}" x="{_f(px(x - half))}" y="{_f(py(y1 + half))}" '
                f'width="{_f(THICK * UNIT)}" height="{_f((y1 - y0 + THICK) * UNIT)}"/>'
            )
    for p in rep.polygons:
        y, x0, x1 = p.bar
        out.append(f'<text class="label" x="{_f(px((x0 + x1) / 2))}" y="{_f(py(y))}">{p.v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
