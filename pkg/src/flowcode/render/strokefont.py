"""Embedded stroke font: glyphs as polylines on a 5x7 design grid.

Using line strokes instead of a font engine keeps text extents exactly
computable and rendering byte-deterministic. Lowercase letters reuse the
uppercase forms; unknown characters draw as a box.
"""

from __future__ import annotations

GRID_W = 5.0
GRID_H = 7.0
ADVANCE = 6.0  # grid units per character cell (glyph width 5 + gap 1)

_G: dict[str, tuple[tuple[tuple[float, float], ...], ...]] = {
    "A": (((0, 7), (0, 2), (2.5, 0), (5, 2), (5, 7)), ((0, 4), (5, 4))),
    "B": (((0, 0), (0, 7)), ((0, 0), (4, 0), (5, 1), (5, 2.5), (4, 3.5), (0, 3.5)), ((4, 3.5), (5, 4.5), (5, 6), (4, 7), (0, 7))),
    "C": (((5, 1), (4, 0), (1, 0), (0, 1), (0, 6), (1, 7), (4, 7), (5, 6)),),
    "D": (((0, 0), (0, 7), (3, 7), (5, 5), (5, 2), (3, 0), (0, 0)),),
    "E": (((5, 0), (0, 0), (0, 7), (5, 7)), ((0, 3.5), (3.5, 3.5))),
    "F": (((5, 0), (0, 0), (0, 7)), ((0, 3.5), (3.5, 3.5))),
    "G": (((5, 1), (4, 0), (1, 0), (0, 1), (0, 6), (1, 7), (4, 7), (5, 6), (5, 4), (3, 4)),),
    "H": (((0, 0), (0, 7)), ((5, 0), (5, 7)), ((0, 3.5), (5, 3.5))),
    "I": (((1, 0), (4, 0)), ((2.5, 0), (2.5, 7)), ((1, 7), (4, 7))),
    "J": (((5, 0), (5, 6), (4, 7), (1, 7), (0, 6)),),
    "K": (((0, 0), (0, 7)), ((5, 0), (0, 3.5), (5, 7))),
    "L": (((0, 0), (0, 7), (5, 7)),),
    "M": (((0, 7), (0, 0), (2.5, 3), (5, 0), (5, 7)),),
    "N": (((0, 7), (0, 0), (5, 7), (5, 0)),),
    "O": (((1, 0), (4, 0), (5, 1), (5, 6), (4, 7), (1, 7), (0, 6), (0, 1), (1, 0)),),
    "P": (((0, 7), (0, 0), (4, 0), (5, 1), (5, 3), (4, 4), (0, 4)),),
    "Q": (((1, 0), (4, 0), (5, 1), (5, 6), (4, 7), (1, 7), (0, 6), (0, 1), (1, 0)), ((3, 5), (5, 7))),
    "R": (((0, 7), (0, 0), (4, 0), (5, 1), (5, 3), (4, 4), (0, 4)), ((2, 4), (5, 7))),
    "S": (((5, 1), (4, 0), (1, 0), (0, 1), (0, 2.5), (1, 3.5), (4, 3.5), (5, 4.5), (5, 6), (4, 7), (1, 7), (0, 6)),),
    "T": (((0, 0), (5, 0)), ((2.5, 0), (2.5, 7))),
    "U": (((0, 0), (0, 6), (1, 7), (4, 7), (5, 6), (5, 0)),),
    "V": (((0, 0), (2.5, 7), (5, 0)),),
    "W": (((0, 0), (1, 7), (2.5, 4), (4, 7), (5, 0)),),
    "X": (((0, 0), (5, 7)), ((5, 0), (0, 7))),
    "Y": (((0, 0), (2.5, 3.5), (5, 0)), ((2.5, 3.5), (2.5, 7))),
    "Z": (((0, 0), (5, 0), (0, 7), (5, 7)),),
    "0": (((1, 0), (4, 0), (5, 1), (5, 6), (4, 7), (1, 7), (0, 6), (0, 1), (1, 0)), ((0, 6), (5, 1))),
    "1": (((1, 1), (2.5, 0), (2.5, 7)), ((1, 7), (4, 7))),
    "2": (((0, 1), (1, 0), (4, 0), (5, 1), (5, 2.5), (0, 7), (5, 7)),),
    "3": (((0, 1), (1, 0), (4, 0), (5, 1), (5, 2.5), (4, 3.5), (2, 3.5)), ((4, 3.5), (5, 4.5), (5, 6), (4, 7), (1, 7), (0, 6))),
    "4": (((4, 7), (4, 0), (0, 5), (5, 5)),),
    "5": (((5, 0), (0, 0), (0, 3), (4, 3), (5, 4), (5, 6), (4, 7), (1, 7), (0, 6)),),
    "6": (((4, 0), (1, 0), (0, 1), (0, 6), (1, 7), (4, 7), (5, 6), (5, 4), (4, 3), (0, 3)),),
    "7": (((0, 0), (5, 0), (2, 7)),),
    "8": (((1, 0), (4, 0), (5, 1), (5, 2.5), (4, 3.5), (1, 3.5), (0, 2.5), (0, 1), (1, 0)), ((1, 3.5), (0, 4.5), (0, 6), (1, 7), (4, 7), (5, 6), (5, 4.5), (4, 3.5))),
    "9": (((5, 4), (1, 4), (0, 3), (0, 1), (1, 0), (4, 0), (5, 1), (5, 6), (4, 7), (1, 7)),),
    "_": (((0, 7), (5, 7)),),
    "-": (((1, 3.5), (4, 3.5)),),
    "+": (((2.5, 1.5), (2.5, 5.5)), ((0.5, 3.5), (4.5, 3.5))),
    "*": (((2.5, 1), (2.5, 6)), ((0.5, 2), (4.5, 5)), ((4.5, 2), (0.5, 5))),
    "/": (((4.5, 0), (0.5, 7)),),
    "%": (((4.5, 0), (0.5, 7)), ((0.5, 0), (1.5, 0), (1.5, 1.5), (0.5, 1.5), (0.5, 0)), ((3.5, 5.5), (4.5, 5.5), (4.5, 7), (3.5, 7), (3.5, 5.5))),
    "=": (((0.5, 2.5), (4.5, 2.5)), ((0.5, 4.5), (4.5, 4.5))),
    "<": (((4, 0.5), (0.5, 3.5), (4, 6.5)),),
    ">": (((1, 0.5), (4.5, 3.5), (1, 6.5)),),
    "(": (((3.5, 0), (2, 1.5), (2, 5.5), (3.5, 7)),),
    ")": (((1.5, 0), (3, 1.5), (3, 5.5), (1.5, 7)),),
    ",": (((2.5, 6), (2.5, 7), (1.8, 7.8)),),
    ":": (((2.5, 2), (2.5, 2.6)), ((2.5, 5), (2.5, 5.6))),
    ".": (((2.3, 6.6), (2.7, 6.6), (2.7, 7), (2.3, 7), (2.3, 6.6)),),
    "'": (((2.5, 0), (2.5, 1.5)),),
    '"': (((1.8, 0), (1.8, 1.5)), ((3.2, 0), (3.2, 1.5))),
    "!": (((2.5, 0), (2.5, 5)), ((2.5, 6.4), (2.5, 7))),
    "[": (((3.5, 0), (2, 0), (2, 7), (3.5, 7)),),
    "]": (((1.5, 0), (3, 0), (3, 7), (1.5, 7)),),
    "?": (((0, 1), (1, 0), (4, 0), (5, 1), (5, 2.5), (2.5, 4), (2.5, 5)), ((2.5, 6.4), (2.5, 7))),
    "#": (((1.5, 1), (1.5, 6)), ((3.5, 1), (3.5, 6)), ((0.5, 2.5), (4.5, 2.5)), ((0.5, 4.5), (4.5, 4.5))),
    " ": (),
}

_BOX = (((0.5, 0.5), (4.5, 0.5), (4.5, 6.5), (0.5, 6.5), (0.5, 0.5)),)


def glyph_strokes(char: str):
    key = char.upper() if char.isalpha() else char
    return _G.get(key, _BOX)


def char_advance(font_size: float) -> float:
    return font_size * ADVANCE / GRID_H


def text_width(text: str, font_size: float) -> float:
    if not text:
        return 0.0
    # last cell keeps only the glyph width, not the trailing gap
    return char_advance(font_size) * len(text) - font_size * (ADVANCE - GRID_W) / GRID_H


def text_strokes(text: str, x: float, y: float, font_size: float):
    """Polylines (absolute coords) for text whose top-left is (x, y)."""
    scale = font_size / GRID_H
    out = []
    cx = x
    for char in text:
        for line in glyph_strokes(char):
            out.append(tuple((cx + px * scale, y + py * scale) for px, py in line))
        cx += char_advance(font_size)
    return out
