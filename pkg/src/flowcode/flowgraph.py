"""Flowchart intermediate representation.

A FlowGraph is a directed graph of typed blocks with optionally labeled
edges. Every other component (lowering, structuring, encoding, rendering,
recognition) consumes or produces this IR, so its validity rules and the
deterministic block ordering defined here are load-bearing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class BlockKind(Enum):
    """Block role; the enum value is the shape token used in encodings."""

    TERMINAL = "OVAL"
    PROCESS = "RECTANGLE"
    INPUT_OUTPUT = "PARALLELOGRAM"
    DECISION = "DIAMOND"

    @property
    def shape_token(self) -> str:
        return self.value

    @classmethod
    def from_shape_token(cls, token: str) -> "BlockKind":
        for kind in cls:
            if kind.value == token:
                return kind
        raise ValueError(f"unknown shape token: {token!r}")


SHAPE_TOKENS = frozenset(kind.value for kind in BlockKind)


class EdgeLabel(Enum):
    UNLABELED = "-"
    YES = "yes"
    NO = "no"


@dataclass(frozen=True)
class FlowNode:
    id: str
    kind: BlockKind
    text: str


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    label: EdgeLabel = EdgeLabel.UNLABELED


class InvalidGraph(Exception):
    """Raised when an operation requires a graph that passes validate()."""

    def __init__(self, violations: tuple["Violation", ...]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


@dataclass(frozen=True)
class Violation:
    rule: str
    subject: str

    def __str__(self) -> str:
        return f"{self.rule}: {self.subject}"


@dataclass(frozen=True)
class ValidationResult:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class FlowGraph:
    nodes: tuple[FlowNode, ...]
    edges: tuple[Edge, ...]

    def __init__(self, nodes, edges):
        object.__setattr__(self, "nodes", tuple(nodes))
        object.__setattr__(self, "edges", tuple(edges))

    def node(self, node_id: str) -> FlowNode:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise KeyError(node_id)

    def node_map(self) -> dict[str, FlowNode]:
        return {n.id: n for n in self.nodes}

    def out_edges(self, node_id: str) -> list[Edge]:
        return [e for e in self.edges if e.src == node_id]

    def in_degree(self, node_id: str) -> int:
        return sum(1 for e in self.edges if e.dst == node_id)

    def start_node(self) -> FlowNode:
        """The unique in-degree-0 Terminal; graph must be valid."""
        for n in self.nodes:
            if n.kind is BlockKind.TERMINAL and self.in_degree(n.id) == 0:
                return n
        raise InvalidGraph((Violation("missing start node", "<graph>"),))

    def end_terminals(self) -> list[FlowNode]:
        return [
            n
            for n in self.nodes
            if n.kind is BlockKind.TERMINAL and not self.out_edges(n.id)
        ]


def validate(graph: FlowGraph) -> ValidationResult:
    """Check every IR invariant; violations are returned, never raised."""
    bad: list[Violation] = []
    seen_ids: set[str] = set()
    for n in graph.nodes:
        if n.id in seen_ids:
            bad.append(Violation("duplicate node id", n.id))
        seen_ids.add(n.id)
        if not n.text:
            bad.append(Violation("empty node text", n.id))

    for e in graph.edges:
        for endpoint in (e.src, e.dst):
            if endpoint not in seen_ids:
                bad.append(Violation("edge endpoint not a node", f"{e.src}->{e.dst}"))

    if any(v.rule == "edge endpoint not a node" or v.rule == "duplicate node id" for v in bad):
        return ValidationResult(tuple(bad))

    in_deg = {n.id: 0 for n in graph.nodes}
    out: dict[str, list[Edge]] = {n.id: [] for n in graph.nodes}
    for e in graph.edges:
        in_deg[e.dst] += 1
        out[e.src].append(e)

    starts = [
        n for n in graph.nodes if n.kind is BlockKind.TERMINAL and in_deg[n.id] == 0
    ]
    if len(starts) != 1:
        bad.append(
            Violation(
                "exactly one start Terminal required",
                ", ".join(n.id for n in starts) or "<none>",
            )
        )
    ends = [n for n in graph.nodes if n.kind is BlockKind.TERMINAL and not out[n.id]]
    if not ends:
        bad.append(Violation("no end Terminal", "<graph>"))

    for n in graph.nodes:
        labels = [e.label for e in out[n.id]]
        if n.kind is BlockKind.DECISION:
            if sorted(l.value for l in labels) != ["no", "yes"]:
                bad.append(Violation("Decision out-edges must be exactly one Yes and one No", n.id))
        else:
            for e in out[n.id]:
                if e.label is not EdgeLabel.UNLABELED:
                    bad.append(Violation("Yes/No label on non-Decision edge", f"{e.src}->{e.dst}"))
            is_end = n.kind is BlockKind.TERMINAL and not out[n.id]
            if not is_end and len(out[n.id]) != 1:
                bad.append(Violation("non-Decision node must have exactly one outgoing edge", n.id))

    if len(starts) == 1:
        reached = {starts[0].id}
        frontier = [starts[0].id]
        while frontier:
            cur = frontier.pop()
            for e in out[cur]:
                if e.dst not in reached:
                    reached.add(e.dst)
                    frontier.append(e.dst)
        for n in graph.nodes:
            if n.id not in reached:
                bad.append(Violation("unreachable node", n.id))

    return ValidationResult(tuple(bad))


def linearize(graph: FlowGraph) -> list[FlowNode]:
    """Deterministic start-to-end depth-first block order.

    Decision nodes are expanded Yes edge first, then No; each node is
    emitted at its first visit only.
    """
    result = validate(graph)
    if not result.ok:
        raise InvalidGraph(result.violations)

    nodes = graph.node_map()
    out: dict[str, list[Edge]] = {n.id: [] for n in graph.nodes}
    for e in graph.edges:
        out[e.src].append(e)

    def ordered_successors(node_id: str) -> list[str]:
        edges = out[node_id]
        if nodes[node_id].kind is BlockKind.DECISION:
            yes = next(e for e in edges if e.label is EdgeLabel.YES)
            no = next(e for e in edges if e.label is EdgeLabel.NO)
            return [yes.dst, no.dst]
        return [e.dst for e in edges]

    order: list[FlowNode] = []
    visited: set[str] = set()
    stack = [graph.start_node().id]
    while stack:
        cur = stack.pop()
        if cur in visited:
            continue
        visited.add(cur)
        order.append(nodes[cur])
        # push in reverse so the Yes branch is walked before the No branch
        for succ in reversed(ordered_successors(cur)):
            if succ not in visited:
                stack.append(succ)
    return order


def to_json_dict(graph: FlowGraph) -> dict:
    """Wire form used inside corpus JSONL; field order is canonical."""
    return {
        "nodes": [
            {"id": n.id, "kind": n.kind.shape_token, "text": n.text}
            for n in graph.nodes
        ],
        "edges": [
            {"src": e.src, "dst": e.dst, "label": e.label.value}
            for e in graph.edges
        ],
    }


def from_json_dict(data: dict) -> FlowGraph:
    nodes = tuple(
        FlowNode(d["id"], BlockKind.from_shape_token(d["kind"]), d["text"])
        for d in data["nodes"]
    )
    edges = tuple(
        Edge(d["src"], d["dst"], EdgeLabel(d["label"])) for d in data["edges"]
    )
    return FlowGraph(nodes, edges)


def equivalent(a: FlowGraph, b: FlowGraph) -> bool:
    """True when the graphs are isomorphic with identical texts and labels.

    Both graphs must validate. Because linearize() is determined purely by
    structure, an isomorphism exists iff the linearized (kind, text)
    sequences match and the edge sets correspond under that ordering.
    """
    try:
        la, lb = linearize(a), linearize(b)
    except InvalidGraph:
        return False
    if len(la) != len(lb):
        return False
    if [(n.kind, n.text) for n in la] != [(n.kind, n.text) for n in lb]:
        return False
    mapping = {na.id: nb.id for na, nb in zip(la, lb)}
    if len(a.nodes) != len(la) or len(b.nodes) != len(lb):
        return False
    ea = {(mapping[e.src], mapping[e.dst], e.label) for e in a.edges}
    eb = {(e.src, e.dst, e.label) for e in b.edges}
    return ea == eb
