"""Deterministic SVG drawings of a polygon and its diagonals."""
from __future__ import annotations

from .geometry import Polygon
from .triangulation import canonical

WIDTH = 480
MARGIN = 24


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def render_svg(P: Polygon, diagonals=(), title: str | None = None) -> str:
    """SVG text with the outline, one line per diagonal and a label per vertex.

    Output depends only on the inputs, so it is byte-stable across runs.
    """
    xs = [p.x for p in P.points]
    ys = [p.y for p in P.points]
    x0, y0 = min(xs), min(ys)
    span = max(max(xs) - x0, max(ys) - y0, 1)
    scale = (WIDTH - 2 * MARGIN) / span
    # flip y so that counter-clockwise stays counter-clockwise on screen
    pos = [(MARGIN + (x - x0) * scale, WIDTH - MARGIN - (y - y0) * scale) for x, y in P.points]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{WIDTH}" viewBox="0 0 {WIDTH} {WIDTH}">'
    ]
    if title:
        out.append(f"<title>{title}</title>")
    ring = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in pos)
    out.append(f'<polygon class="outline" points="{ring}" fill="#eef3fb" stroke="#203050" stroke-width="1.5"/>')
    for i, j in sorted(canonical(*d) for d in diagonals):
        (ax, ay), (bx, by) = pos[i], pos[j]
        out.append(
            f'<line class="diagonal" x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}" '
            'stroke="#c04040" stroke-width="1"/>'
        )
    for k, (a, b) in enumerate(pos):
        out.append(f'<circle cx="{_fmt(a)}" cy="{_fmt(b)}" r="2.5" fill="#203050"/>')
        out.append(f'<text class="label" x="{_fmt(a + 4)}" y="{_fmt(b - 4)}" font-size="11">{k}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_pair(P: Polygon, Q: Polygon, diagonals=()) -> str:
    """Two drawings side by side sharing one diagonal set."""
    left = render_svg(P, diagonals).splitlines()[1:-1]
    right = render_svg(Q, diagonals).splitlines()[1:-1]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{2 * WIDTH}" height="{WIDTH}" '
        f'viewBox="0 0 {2 * WIDTH} {WIDTH}">',
        "<g>",
        *left,
        "</g>",
        f'<g transform="translate({WIDTH},0)">',
        *right,
        "</g>",
        "</svg>",
    ]
    return "\n".join(out) + "\n"
