"""Sequence encodings of a FlowGraph.

Three variants over the linearized (text, shape) pairs: tuple form with
quotes, brace-delimited string form, and the modified string form that
separates blocks with the literal "[SEP]" token.
"""

from __future__ import annotations

from enum import Enum

from .flowgraph import FlowGraph, SHAPE_TOKENS, linearize

SEP = "[SEP]"


class EncodingVariant(Enum):
    TUPLE = "tuple"
    STRING = "string"
    MODIFIED_STRING = "modified"


class MalformedEncoding(Exception):
    pass


def encode(graph: FlowGraph, variant: EncodingVariant) -> str:
    """Serialize the graph's blocks in linearize() order.

    Raises InvalidGraph (via linearize) when the graph is not valid.
    """
    pairs = [(node.text, node.kind.shape_token) for node in linearize(graph)]
    if variant is EncodingVariant.TUPLE:
        return "[" + ", ".join(f"('{text}', '{shape}')" for text, shape in pairs) + "]"
    if variant is EncodingVariant.STRING:
        return ",".join("{" + f"{text},{shape}" + "}" for text, shape in pairs)
    if variant is EncodingVariant.MODIFIED_STRING:
        return f" {SEP} ".join(f"{text}, {shape}" for text, shape in pairs)
    raise ValueError(f"unknown variant: {variant!r}")


def encode_all(graph: FlowGraph) -> dict[str, str]:
    return {v.value: encode(graph, v) for v in EncodingVariant}


def decode_modified(text: str) -> list[tuple[str, str]]:
    """Parse a modified-string encoding back into (text, shape token) pairs."""
    pairs: list[tuple[str, str]] = []
    for segment in text.split(f" {SEP} "):
        head, sep, shape = segment.rpartition(", ")
        if not sep or shape not in SHAPE_TOKENS:
            raise MalformedEncoding(f"segment lacks a trailing shape token: {segment!r}")
        pairs.append((head, shape))
    return pairs
