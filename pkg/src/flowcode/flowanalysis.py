"""Control-flow analyses over FlowGraphs: successor tables, back edges,
natural loops, reachability, and immediate postdominators."""

from __future__ import annotations

from dataclasses import dataclass

from .flowgraph import BlockKind, EdgeLabel, FlowGraph

VIRTUAL_EXIT = "__exit__"


@dataclass(frozen=True)
class GraphInfo:
    succ: dict[str, list[str]]          # yes-first ordered successors
    labeled: dict[str, dict[str, str]]  # decision id -> {"yes": dst, "no": dst}
    pred: dict[str, list[str]]
    back_edges: frozenset[tuple[str, str]]
    loop_nodes: dict[str, frozenset[str]]  # header -> natural loop members
    ipdom: dict[str, str | None]


def analyze(graph: FlowGraph) -> GraphInfo:
    nodes = graph.node_map()
    succ: dict[str, list[str]] = {n.id: [] for n in graph.nodes}
    labeled: dict[str, dict[str, str]] = {}
    pred: dict[str, list[str]] = {n.id: [] for n in graph.nodes}
    for n in graph.nodes:
        edges = graph.out_edges(n.id)
        if n.kind is BlockKind.DECISION:
            yes = next(e.dst for e in edges if e.label is EdgeLabel.YES)
            no = next(e.dst for e in edges if e.label is EdgeLabel.NO)
            succ[n.id] = [yes, no]
            labeled[n.id] = {"yes": yes, "no": no}
        else:
            succ[n.id] = [e.dst for e in edges]
        for e in edges:
            pred[e.dst].append(n.id)

    start = graph.start_node().id
    back = _back_edges(start, succ)
    loops = {header: _natural_loop(header, sources, pred)
             for header, sources in _group_back_edges(back).items()}
    ipdom = _immediate_postdominators(graph, succ)
    return GraphInfo(succ, labeled, pred, frozenset(back), loops, ipdom)


def _back_edges(start: str, succ: dict[str, list[str]]) -> set[tuple[str, str]]:
    """Edges pointing to an ancestor on the current DFS path (yes-first)."""
    back: set[tuple[str, str]] = set()
    on_path: set[str] = set()
    visited: set[str] = set()

    # iterative DFS with explicit enter/leave events
    stack: list[tuple[str, bool]] = [(start, False)]
    while stack:
        node, leaving = stack.pop()
        if leaving:
            on_path.discard(node)
            continue
        if node in visited:
            continue
        visited.add(node)
        on_path.add(node)
        stack.append((node, True))
        for s in reversed(succ[node]):
            if s in on_path:
                back.add((node, s))
            elif s not in visited:
                stack.append((s, False))
            # cross/forward edges: not back edges
    return back


def _group_back_edges(back: set[tuple[str, str]]) -> dict[str, list[str]]:
    grouped: dict[str, list[str]] = {}
    for src, header in sorted(back):
        grouped.setdefault(header, []).append(src)
    return grouped


def _natural_loop(header: str, sources: list[str], pred: dict[str, list[str]]) -> frozenset[str]:
    members = {header}
    work = [s for s in sources if s != header]
    while work:
        cur = work.pop()
        if cur in members:
            continue
        members.add(cur)
        work.extend(pred[cur])
    return frozenset(members)


def reachable_from(start: str, succ: dict[str, list[str]]) -> set[str]:
    seen = {start}
    work = [start]
    while work:
        cur = work.pop()
        for s in succ[cur]:
            if s not in seen:
                seen.add(s)
                work.append(s)
    return seen


def _immediate_postdominators(graph: FlowGraph, succ: dict[str, list[str]]) -> dict[str, str | None]:
    """Cooper/Harvey/Kennedy iterative algorithm on the reversed graph with a
    virtual exit joined to every sink."""
    ids = [n.id for n in graph.nodes]
    rsucc: dict[str, list[str]] = {i: [] for i in ids}  # predecessors in reverse graph = successors
    rpred: dict[str, list[str]] = {i: list(succ[i]) for i in ids}
    for i in ids:
        for s in succ[i]:
            rsucc[s].append(i)
    sinks = [i for i in ids if not succ[i]]

    # postorder on the reversed graph from the virtual exit
    order: list[str] = []
    visited: set[str] = set()
    stack: list[tuple[str, bool]] = [(s, False) for s in reversed(sinks)]
    while stack:
        node, leaving = stack.pop()
        if leaving:
            order.append(node)
            continue
        if node in visited:
            continue
        visited.add(node)
        stack.append((node, True))
        for p in reversed(rsucc[node]):
            if p not in visited:
                stack.append((p, False))

    index = {VIRTUAL_EXIT: len(order)}
    for i, n in enumerate(order):
        index[n] = i
    idom: dict[str, str | None] = {n: None for n in ids}
    idom[VIRTUAL_EXIT] = VIRTUAL_EXIT

    def intersect(a: str, b: str) -> str:
        while a != b:
            while index[a] < index[b]:
                a = idom[a]  # type: ignore[assignment]
            while index[b] < index[a]:
                b = idom[b]  # type: ignore[assignment]
        return a

    changed = True
    while changed:
        changed = False
        for node in reversed(order):
            candidates = [VIRTUAL_EXIT] if not succ[node] else []
            candidates += [s for s in rpred[node] if idom.get(s) is not None]
            if not candidates:
                continue
            new = candidates[0]
            for other in candidates[1:]:
                new = intersect(new, other)
            if idom[node] != new:
                idom[node] = new
                changed = True

    return {n: (None if idom[n] in (None, VIRTUAL_EXIT) else idom[n]) for n in ids}
