"""Structuring compiler: reconstruct a PyMini program from a FlowGraph.

The deterministic, non-neural reference solution for flowchart-to-code on
clean graphs. It recovers while loops from back edges and if/elif/else
regions from branch joins; graphs outside the reducible single-entry
image of the lowering stage raise Unstructurable.
"""

from __future__ import annotations

from . import code2flow
from .flowanalysis import GraphInfo, analyze, reachable_from
from .flowgraph import BlockKind, FlowGraph, FlowNode, InvalidGraph, validate
from .pymini import (
    If,
    ParseError,
    Print,
    Program,
    PyMiniError,
    Return,
    Stmt,
    UnsupportedFeature,
    While,
    is_valid_identifier,
    parse,
    parse_expression_fragment,
    parse_expression_list_fragment,
    parse_process_fragment,
    print_canonical,
)


class Unstructurable(Exception):
    """The graph has no structured-program form this compiler can emit."""


class FragmentParseError(Exception):
    def __init__(self, node_id: str, message: str):
        self.node_id = node_id
        super().__init__(f"node {node_id}: {message}")


class _Structurer:
    def __init__(self, graph: FlowGraph):
        self.graph = graph
        self.nodes = graph.node_map()
        self.info: GraphInfo = analyze(graph)
        self.end_ids = {n.id for n in graph.end_terminals()}
        # forward flow only: dropping back edges makes reachability acyclic,
        # which is what branch-join detection needs inside loop bodies
        self.forward_succ = {
            nid: [s for s in succs if (nid, s) not in self.info.back_edges]
            for nid, succs in self.info.succ.items()
        }
        self._reach_cache: dict[str, set[str]] = {}

    # --- helpers ---------------------------------------------------------

    def succ1(self, node_id: str) -> str:
        succs = self.info.succ[node_id]
        if len(succs) != 1:
            raise Unstructurable(f"expected a single successor at {node_id}")
        return succs[0]

    def reach(self, node_id: str) -> set[str]:
        if node_id not in self._reach_cache:
            self._reach_cache[node_id] = reachable_from(node_id, self.forward_succ)
        return self._reach_cache[node_id]

    def cond(self, node: FlowNode):
        try:
            return parse_expression_fragment(node.text)
        except PyMiniError as exc:
            raise FragmentParseError(node.id, str(exc)) from exc

    # --- region walking ---------------------------------------------------

    def walk(self, entry: str, stops: tuple[str, ...]) -> list[Stmt]:
        out: list[Stmt] = []
        cur = entry
        while cur not in stops:
            node = self.nodes[cur]
            if node.kind is BlockKind.TERMINAL:
                # entered the shared exit directly: an explicit bare return,
                # except at the natural end of the whole function
                if stops:
                    out.append(Return(None))
                break
            if node.kind is BlockKind.PROCESS:
                try:
                    out.append(parse_process_fragment(node.text))
                except PyMiniError as exc:
                    raise FragmentParseError(node.id, str(exc)) from exc
                cur = self.step(self.succ1(cur), out, stops)
                if cur is None:
                    break
            elif node.kind is BlockKind.INPUT_OUTPUT:
                cur = self.io_node(node, out, stops)
                if cur is None:
                    break
            elif node.kind is BlockKind.DECISION:
                cur = self.decision(node, out, stops)
                if cur is None:
                    break
            else:  # pragma: no cover
                raise Unstructurable(f"unexpected node kind at {cur}")
        return out

    def step(self, nxt: str, out: list[Stmt], stops: tuple[str, ...]) -> str | None:
        """Follow an unlabeled edge; emits a bare return when it jumps to the
        exit from inside a region. Returns None when the walk is over."""
        if nxt in stops:
            return nxt
        if nxt in self.end_ids:
            if stops:
                out.append(Return(None))
            return None
        return nxt

    def branch(self, entry: str, stops: tuple[str, ...]) -> list[Stmt]:
        """Walk one side of a Decision; an edge straight into the exit is an
        explicit bare return."""
        if entry in self.end_ids:
            return [Return(None)]
        return self.walk(entry, stops)

    def io_node(self, node: FlowNode, out: list[Stmt], stops: tuple[str, ...]) -> str | None:
        text = node.text
        if text.startswith(code2flow.INPUT_PREFIX):
            raise FragmentParseError(node.id, "input block outside the function header")
        if not text.startswith(code2flow.OUTPUT_PREFIX):
            raise FragmentParseError(node.id, "input/output block without an output: prefix")
        payload = text[len(code2flow.OUTPUT_PREFIX):]
        nxt = self.succ1(node.id)
        if nxt in self.end_ids:
            # a single expression followed by the exit is a return; a
            # multi-expression payload can only be a print that ends the flow
            try:
                exprs = parse_expression_list_fragment(payload)
            except PyMiniError as exc:
                raise FragmentParseError(node.id, str(exc)) from exc
            if len(exprs) == 1:
                out.append(Return(exprs[0]))
            else:
                out.append(Print(exprs))
            return None
        try:
            exprs = parse_expression_list_fragment(payload)
        except PyMiniError as exc:
            raise FragmentParseError(node.id, str(exc)) from exc
        out.append(Print(exprs))
        return self.step(nxt, out, stops)

    def decision(self, node: FlowNode, out: list[Stmt], stops: tuple[str, ...]) -> str | None:
        yes_s = self.info.labeled[node.id]["yes"]
        no_s = self.info.labeled[node.id]["no"]

        if node.id in self.info.loop_nodes:
            return self.loop(node, yes_s, no_s, out, stops)

        yes_reach = self.reach(yes_s)
        no_reach = self.reach(no_s)
        if no_s in yes_reach and yes_s in no_reach:
            raise Unstructurable(f"branches of {node.id} re-enter each other")

        if no_s in yes_reach:
            # no else branch: the No edge goes straight to the join
            join = no_s
            body = self.branch(yes_s, (join,) + stops)
            if not body:
                raise Unstructurable(f"empty branch at {node.id}")
            out.append(If(self.cond(node), tuple(body)))
        else:
            join = self.info.ipdom[node.id]
            stop_plus = ((join,) if join is not None else ()) + stops
            body = self.branch(yes_s, stop_plus)
            orelse = self.branch(no_s, stop_plus)
            if not body:
                raise Unstructurable(f"empty branch at {node.id}")
            stmt = If(self.cond(node), tuple(body))
            if len(orelse) == 1 and isinstance(orelse[0], If):
                inner = orelse[0]
                stmt = If(
                    stmt.cond,
                    stmt.body,
                    ((inner.cond, inner.body),) + inner.elifs,
                    inner.orelse,
                )
            elif orelse:
                stmt = If(stmt.cond, stmt.body, (), tuple(orelse))
            out.append(stmt)
            if join is None or join in self.end_ids:
                return None
        if join in stops:
            return join
        if join in self.end_ids:
            return None
        return join

    def loop(self, node: FlowNode, yes_s: str, no_s: str, out: list[Stmt], stops: tuple[str, ...]) -> str | None:
        members = self.info.loop_nodes[node.id]
        for member in sorted(members):
            if member == node.id:
                continue
            outside = [p for p in self.info.pred[member] if p not in members]
            if outside:
                raise Unstructurable(
                    f"loop at {node.id} has a second entry into {member} from {outside[0]}"
                )
        if yes_s not in members:
            if no_s in members:
                raise Unstructurable(f"loop body of {node.id} hangs off the No branch")
            raise Unstructurable(f"no loop body inside the cycle at {node.id}")
        body = self.walk(yes_s, (node.id,))
        if not body:
            raise Unstructurable(f"empty loop body at {node.id}")
        out.append(While(self.cond(node), tuple(body)))
        return self.step(no_s, out, stops)


def structure(graph: FlowGraph) -> Program:
    result = validate(graph)
    if not result.ok:
        raise InvalidGraph(result.violations)

    s = _Structurer(graph)
    start = graph.start_node()
    if not start.text.startswith(code2flow.START_PREFIX):
        raise FragmentParseError(start.id, "start terminal must read 'start <name>'")
    name = start.text[len(code2flow.START_PREFIX):]
    if not is_valid_identifier(name):
        raise FragmentParseError(start.id, f"invalid function name {name!r}")

    cur = s.succ1(start.id)
    params: tuple[str, ...] = ()
    first = s.nodes[cur]
    if first.kind is BlockKind.INPUT_OUTPUT and first.text.startswith(code2flow.INPUT_PREFIX):
        names = [p.strip() for p in first.text[len(code2flow.INPUT_PREFIX):].split(",")]
        if not all(is_valid_identifier(p) for p in names):
            raise FragmentParseError(first.id, "invalid parameter list")
        params = tuple(names)
        cur = s.succ1(cur)

    body = s.walk(cur, ())
    if not body:
        body = [Return(None)]
    program = Program(name, params, tuple(body))

    # the emitted program must survive its own print/parse round trip
    try:
        reparsed = parse(print_canonical(program))
    except (ParseError, UnsupportedFeature) as exc:
        raise Unstructurable(f"reconstructed program does not re-parse: {exc}") from exc
    return reparsed
