"""Rasterize the renderer's SVG subset to an 8-bit grayscale image.

Handles exactly the elements svg.py emits (rect, polygon, ellipse, path)
with white background and black ink; no font engine, no antialiasing.
"""

from __future__ import annotations

import math
import re
import xml.etree.ElementTree as ET

import numpy as np
from PIL import Image, ImageDraw

_NUM = re.compile(r"-?\d+(?:\.\d+)?")


def _floats(text: str) -> list[float]:
    return [float(m) for m in _NUM.findall(text)]


def rasterize(svg: str, scale: float = 1.0) -> np.ndarray:
    """White-background grayscale image of the SVG at `scale` px per unit."""
    if scale <= 0:
        raise ValueError("scale must be positive")
    root = ET.fromstring(svg)
    min_x, min_y, width, height = _floats(root.attrib["viewBox"])
    size = (math.ceil(width * scale), math.ceil(height * scale))
    image = Image.new("L", size, 255)
    draw = ImageDraw.Draw(image)

    def tx(x: float, y: float) -> tuple[float, float]:
        return ((x - min_x) * scale, (y - min_y) * scale)

    def stroke_px(element) -> int:
        return max(1, round(float(element.get("stroke-width", "1")) * scale))

    for element in root:
        tag = element.tag.split("}")[-1]
        filled = element.get("fill", "none")
        stroked = element.get("stroke", "none") != "none"
        if tag == "rect":
            x, y = float(element.get("x")), float(element.get("y"))
            w, h = float(element.get("width")), float(element.get("height"))
            pts = [tx(x, y), tx(x + w, y), tx(x + w, y + h), tx(x, y + h)]
            if filled == "black":
                draw.polygon(pts, fill=0)
            if stroked:
                _outline(draw, pts, stroke_px(element))
        elif tag == "polygon":
            coords = _floats(element.get("points"))
            pts = [tx(coords[i], coords[i + 1]) for i in range(0, len(coords), 2)]
            if filled == "black":
                draw.polygon(pts, fill=0)
            if stroked:
                _outline(draw, pts, stroke_px(element))
        elif tag == "ellipse":
            cx, cy = float(element.get("cx")), float(element.get("cy"))
            rx, ry = float(element.get("rx")), float(element.get("ry"))
            x0, y0 = tx(cx - rx, cy - ry)
            x1, y1 = tx(cx + rx, cy + ry)
            if filled == "black":
                draw.ellipse([x0, y0, x1, y1], fill=0)
            if stroked:
                draw.ellipse([x0, y0, x1, y1], outline=0, width=stroke_px(element))
        elif tag == "path":
            width_px = stroke_px(element)
            for line in _parse_path(element.get("d")):
                pts = [tx(x, y) for x, y in line]
                if len(pts) == 1:
                    draw.point(pts[0], fill=0)
                else:
                    draw.line(pts, fill=0, width=width_px, joint="curve")
    return np.asarray(image)


def _outline(draw: ImageDraw.ImageDraw, pts, width: int) -> None:
    draw.line(pts + [pts[0], pts[1]], fill=0, width=width, joint="curve")


def _parse_path(d: str) -> list[list[tuple[float, float]]]:
    lines: list[list[tuple[float, float]]] = []
    tokens = d.replace(",", " ").split()
    i = 0
    current: list[tuple[float, float]] = []
    while i < len(tokens):
        cmd = tokens[i]
        if cmd == "M":
            if len(current) > 1:
                lines.append(current)
            current = [(float(tokens[i + 1]), float(tokens[i + 2]))]
            i += 3
        elif cmd == "L":
            current.append((float(tokens[i + 1]), float(tokens[i + 2])))
            i += 3
        else:
            raise ValueError(f"unsupported path command: {cmd!r}")
    if len(current) > 1:
        lines.append(current)
    return lines


def write_png(image: np.ndarray, path: str) -> None:
    Image.fromarray(image, mode="L").save(path, format="PNG")
