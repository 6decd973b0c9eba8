"""FlowGraph rendering: deterministic SVG layout and grayscale raster."""

from __future__ import annotations

import json

from ..flowgraph import FlowGraph, InvalidGraph, validate
from .layout import Layout, TextTooWide, compute_layout
from .raster import rasterize, write_png
from .svg import svg_text


def to_svg(graph: FlowGraph) -> str:
    """Byte-deterministic SVG for a valid FlowGraph."""
    result = validate(graph)
    if not result.ok:
        raise InvalidGraph(result.violations)
    return svg_text(compute_layout(graph))


def ground_truth_boxes(graph: FlowGraph, scale: float = 1.0) -> list[dict]:
    """Text boxes (block labels and Yes/No labels) in pixel coordinates,
    matching the raster produced at the same scale. Used as OCR sidecars."""
    result = validate(graph)
    if not result.ok:
        raise InvalidGraph(result.violations)
    layout = compute_layout(graph)
    min_x, min_y = layout.bounds[0], layout.bounds[1]
    boxes = []
    all_boxes = list(layout.texts) + [r.label_box for r in layout.routes if r.label_box]
    for box in all_boxes:
        boxes.append(
            {
                "text": box.text,
                "x": int(round((box.x - min_x) * scale)),
                "y": int(round((box.y - min_y) * scale)),
                "w": max(1, int(round(box.w * scale))),
                "h": max(1, int(round(box.h * scale))),
                "conf": 1.0,
            }
        )
    return boxes


def write_sidecar(graph: FlowGraph, image_path: str, scale: float) -> None:
    with open(image_path + ".gt.json", "w", encoding="utf-8") as fh:
        json.dump(ground_truth_boxes(graph, scale), fh)


__all__ = [
    "Layout",
    "TextTooWide",
    "compute_layout",
    "ground_truth_boxes",
    "rasterize",
    "to_svg",
    "write_png",
    "write_sidecar",
]
