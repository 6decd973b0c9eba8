"""SVG emission from a computed layout.

Output uses a small SVG 1.1 subset: rect, polygon, ellipse, and path.
Block labels are drawn as stroke-font paths so the raster stage needs no
font engine and output stays byte-deterministic.
"""

from __future__ import annotations

import math

from ..flowgraph import BlockKind
from .layout import ARROW_HALF, ARROW_L, Layout, Route, STANDOFF, STROKE, TextBox
from .strokefont import text_strokes


def _fmt(value: float) -> str:
    text = f"{value:.2f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def _points(points) -> str:
    return " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)


def _path_d(lines) -> str:
    parts = []
    for line in lines:
        parts.append(f"M {_fmt(line[0][0])} {_fmt(line[0][1])}")
        for x, y in line[1:]:
            parts.append(f"L {_fmt(x)} {_fmt(y)}")
    return " ".join(parts)


def _shrink(a, b, amount):
    """Move point a toward b by `amount`."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    norm = math.hypot(dx, dy)
    if norm <= amount:
        return b
    return (a[0] + dx / norm * amount, a[1] + dy / norm * amount)


def arrow_geometry(route: Route) -> tuple[list[tuple[float, float]], list[tuple[float, float]]]:
    """(shaft polyline, filled head triangle) with standoff gaps applied."""
    pts = list(route.points)
    pts[0] = _shrink(pts[0], pts[1], STANDOFF)
    tip = _shrink(pts[-1], pts[-2], STANDOFF)
    dx, dy = tip[0] - pts[-2][0], tip[1] - pts[-2][1]
    norm = math.hypot(dx, dy) or 1.0
    ux, uy = dx / norm, dy / norm
    base = (tip[0] - ux * ARROW_L, tip[1] - uy * ARROW_L)
    head = [
        tip,
        (base[0] - uy * ARROW_HALF, base[1] + ux * ARROW_HALF),
        (base[0] + uy * ARROW_HALF, base[1] - ux * ARROW_HALF),
    ]
    shaft = pts[:-1] + [base]
    return shaft, head


def svg_text(layout: Layout) -> str:
    x0, y0, x1, y1 = layout.bounds
    w, h = x1 - x0, y1 - y0
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(w)} {_fmt(h)}" '
        f'width="{_fmt(w)}" height="{_fmt(h)}">',
        f'<rect x="{_fmt(x0)}" y="{_fmt(y0)}" width="{_fmt(w)}" height="{_fmt(h)}" fill="white" stroke="none"/>',
    ]
    style = f'fill="none" stroke="black" stroke-width="{_fmt(STROKE)}"'
    for node in layout.graph.nodes:
        p = layout.placements[node.id]
        if node.kind is BlockKind.PROCESS:
            out.append(
                f'<rect x="{_fmt(p.left)}" y="{_fmt(p.top)}" width="{_fmt(p.w)}" height="{_fmt(p.h)}" {style}/>'
            )
        elif node.kind is BlockKind.TERMINAL:
            out.append(
                f'<ellipse cx="{_fmt(p.cx)}" cy="{_fmt(p.cy)}" rx="{_fmt(p.w / 2)}" ry="{_fmt(p.h / 2)}" {style}/>'
            )
        else:
            out.append(f'<polygon points="{_points(p.polygon())}" {style}/>')
    for route in layout.routes:
        shaft, head = arrow_geometry(route)
        out.append(f'<path d="{_path_d([shaft])}" {style}/>')
        out.append(f'<polygon points="{_points(head)}" fill="black" stroke="none"/>')
        if route.label_box is not None:
            out.append(_text_path(route.label_box))
    for box in layout.texts:
        out.append(_text_path(box))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _text_path(box: TextBox) -> str:
    lines = text_strokes(box.text, box.x, box.y, box.font)
    width = max(1.0, box.font / 10.0)
    return f'<path d="{_path_d(lines)}" fill="none" stroke="black" stroke-width="{_fmt(width)}"/>'
