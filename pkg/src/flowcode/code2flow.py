"""Lowering from a PyMini program to a FlowGraph.

Conventions: the start Terminal reads "start <name>", parameters become a
single "input:" block, print and return become "output:" blocks, and one
shared "end function return" Terminal closes every path. For-range loops
are desugared to their while form before lowering.
"""

from __future__ import annotations

from .flowgraph import BlockKind, Edge, EdgeLabel, FlowGraph, FlowNode
from .pymini import (
    Assign,
    AugAssign,
    ExprStmt,
    ForRange,
    If,
    Print,
    Program,
    Return,
    Stmt,
    While,
    desugar_loops,
    expr_text,
    stmt_text,
)

END_TEXT = "end function return"
START_PREFIX = "start "
INPUT_PREFIX = "input: "
OUTPUT_PREFIX = "output: "


class _Builder:
    def __init__(self) -> None:
        self.nodes: list[FlowNode] = []
        self.edges: list[Edge] = []
        self.end_id: str | None = None

    def add(self, kind: BlockKind, text: str) -> str:
        node_id = f"n{len(self.nodes)}"
        self.nodes.append(FlowNode(node_id, kind, text))
        return node_id

    def connect(self, frontier: list[tuple[str, EdgeLabel]], dst: str) -> None:
        for src, label in frontier:
            self.edges.append(Edge(src, dst, label))

    def end_terminal(self) -> str:
        if self.end_id is None:
            self.end_id = self.add(BlockKind.TERMINAL, END_TEXT)
        return self.end_id


def lower(program: Program) -> FlowGraph:
    program = desugar_loops(program)
    b = _Builder()
    start = b.add(BlockKind.TERMINAL, START_PREFIX + program.name)
    frontier: list[tuple[str, EdgeLabel]] = [(start, EdgeLabel.UNLABELED)]
    if program.params:
        inp = b.add(BlockKind.INPUT_OUTPUT, INPUT_PREFIX + ", ".join(program.params))
        b.connect(frontier, inp)
        frontier = [(inp, EdgeLabel.UNLABELED)]
    frontier = _lower_block(b, program.body, frontier)
    if frontier:
        b.connect(frontier, b.end_terminal())
    return FlowGraph(tuple(b.nodes), tuple(b.edges))


def _lower_block(
    b: _Builder,
    body: tuple[Stmt, ...],
    frontier: list[tuple[str, EdgeLabel]],
) -> list[tuple[str, EdgeLabel]]:
    """Lower a statement block; returns the dangling exits that fall through
    (empty when every path returned)."""
    for stmt in body:
        if not frontier:
            # unreachable statements are rejected at parse time
            break
        if isinstance(stmt, (Assign, AugAssign, ExprStmt)):
            node = b.add(BlockKind.PROCESS, stmt_text(stmt))
            b.connect(frontier, node)
            frontier = [(node, EdgeLabel.UNLABELED)]
        elif isinstance(stmt, Print):
            text = OUTPUT_PREFIX + ", ".join(expr_text(a) for a in stmt.args)
            node = b.add(BlockKind.INPUT_OUTPUT, text)
            b.connect(frontier, node)
            frontier = [(node, EdgeLabel.UNLABELED)]
        elif isinstance(stmt, Return):
            if stmt.value is not None:
                node = b.add(BlockKind.INPUT_OUTPUT, OUTPUT_PREFIX + expr_text(stmt.value))
                b.connect(frontier, node)
                frontier = [(node, EdgeLabel.UNLABELED)]
            b.connect(frontier, b.end_terminal())
            frontier = []
        elif isinstance(stmt, While):
            dec = b.add(BlockKind.DECISION, expr_text(stmt.cond))
            b.connect(frontier, dec)
            body_exits = _lower_block(b, stmt.body, [(dec, EdgeLabel.YES)])
            b.connect(body_exits, dec)  # back edges
            frontier = [(dec, EdgeLabel.NO)]
        elif isinstance(stmt, If):
            exits: list[tuple[str, EdgeLabel]] = []
            dec = b.add(BlockKind.DECISION, expr_text(stmt.cond))
            b.connect(frontier, dec)
            exits.extend(_lower_block(b, stmt.body, [(dec, EdgeLabel.YES)]))
            pending: list[tuple[str, EdgeLabel]] = [(dec, EdgeLabel.NO)]
            for cond, blk in stmt.elifs:
                inner = b.add(BlockKind.DECISION, expr_text(cond))
                b.connect(pending, inner)
                exits.extend(_lower_block(b, blk, [(inner, EdgeLabel.YES)]))
                pending = [(inner, EdgeLabel.NO)]
            if stmt.orelse:
                exits.extend(_lower_block(b, stmt.orelse, pending))
            else:
                exits.extend(pending)
            frontier = exits
        elif isinstance(stmt, ForRange):  # pragma: no cover - removed by desugaring
            raise AssertionError("for-range must be desugared before lowering")
        else:
            raise TypeError(f"unknown statement: {stmt!r}")
    return frontier
