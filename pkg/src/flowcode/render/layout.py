"""Deterministic top-down layout with orthogonal edge routing.

Blocks have fixed sizes per kind; the main flow runs straight down a
column, Yes branches drop straight below their Decision, No branches
route right and down. Loop back edges run up a left-hand lane, loop
exits and elseless joins run down a right-hand lane. Structured graphs
(the image of the lowering stage) never produce crossing ink; arbitrary
valid graphs fall back to a plain stacked layout that is correct but may
cross.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..flowanalysis import analyze, reachable_from
from ..flowgraph import BlockKind, EdgeLabel, FlowGraph, FlowNode
from .strokefont import text_width

PROC_W, PROC_H = 220.0, 60.0
TERM_W, TERM_H = 180.0, 50.0
DEC_W, DEC_H = 160.0, 160.0
VGAP = 60.0
COL_GAP = 46.0
LANE_GAP = 20.0
APPROACH = 16.0
STANDOFF = 2.0
ARROW_L, ARROW_HALF = 10.0, 5.0
STROKE = 2.0
FONT = 16.0
MIN_FONT = 6.0
LABEL_FONT = 8.0
MARGIN = 30.0
TEXT_PAD = 6.0
PGRAM_SLANT = 25.0


class TextTooWide(Exception):
    def __init__(self, node_id: str, text: str):
        super().__init__(f"label of {node_id} exceeds its block width at minimum font size: {text!r}")


class LayoutFallback(Exception):
    """Internal: the region walk cannot lay this graph out; use stacking."""


def block_dims(kind: BlockKind) -> tuple[float, float]:
    if kind is BlockKind.TERMINAL:
        return TERM_W, TERM_H
    if kind is BlockKind.DECISION:
        return DEC_W, DEC_H
    return PROC_W, PROC_H


@dataclass
class Placement:
    node: FlowNode
    cx: float
    top: float

    @property
    def w(self) -> float:
        return block_dims(self.node.kind)[0]

    @property
    def h(self) -> float:
        return block_dims(self.node.kind)[1]

    @property
    def cy(self) -> float:
        return self.top + self.h / 2

    @property
    def bottom(self) -> float:
        return self.top + self.h

    @property
    def left(self) -> float:
        return self.cx - self.w / 2

    @property
    def right(self) -> float:
        return self.cx + self.w / 2

    def polygon(self) -> list[tuple[float, float]]:
        x0, y0, x1, y1 = self.left, self.top, self.right, self.bottom
        if self.node.kind is BlockKind.PROCESS:
            return [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
        if self.node.kind is BlockKind.INPUT_OUTPUT:
            s = PGRAM_SLANT
            return [(x0 + s, y0), (x1, y0), (x1 - s, y1), (x0, y1)]
        if self.node.kind is BlockKind.DECISION:
            return [(self.cx, y0), (x1, self.cy), (self.cx, y1), (x0, self.cy)]
        # terminal: 16-gon approximation of the ellipse
        rx, ry = self.w / 2, self.h / 2
        return [
            (self.cx + rx * math.cos(2 * math.pi * i / 16), self.cy + ry * math.sin(2 * math.pi * i / 16))
            for i in range(16)
        ]


@dataclass
class TextBox:
    text: str
    x: float
    y: float
    w: float
    h: float
    font: float


@dataclass
class Route:
    points: list[tuple[float, float]]  # boundary-to-boundary polyline
    label: str | None = None           # "yes" | "no"
    label_box: TextBox | None = None


@dataclass
class _Box:
    x0: float = math.inf
    y0: float = math.inf
    x1: float = -math.inf
    y1: float = -math.inf

    def add(self, x0, y0, x1, y1) -> None:
        self.x0 = min(self.x0, x0)
        self.y0 = min(self.y0, y0)
        self.x1 = max(self.x1, x1)
        self.y1 = max(self.y1, y1)

    def merge(self, other: "_Box") -> None:
        if not other.empty:
            self.add(other.x0, other.y0, other.x1, other.y1)

    @property
    def empty(self) -> bool:
        return self.x0 is math.inf or self.x0 > self.x1


@dataclass
class Layout:
    graph: FlowGraph
    placements: dict[str, Placement]
    routes: list[Route]
    texts: list[TextBox]  # block labels, in node order
    bounds: tuple[float, float, float, float]  # x0, y0, x1, y1 incl. margin


def fit_font(text: str, kind: BlockKind, node_id: str) -> float:
    """Largest font <= FONT whose text box sits strictly inside the shape."""
    w, h = block_dims(kind)
    size = FONT
    while size >= MIN_FONT:
        tw = text_width(text, size)
        th = size
        if kind is BlockKind.TERMINAL:
            rx, ry = w / 2 - STROKE, h / 2 - STROKE
            if math.hypot(tw / 2 / rx, th / 2 / ry) <= 0.97:
                return size
        elif kind is BlockKind.DECISION:
            rx, ry = w / 2 - STROKE, h / 2 - STROKE
            if (tw / 2) / rx + (th / 2) / ry <= 0.94:
                return size
        elif kind is BlockKind.INPUT_OUTPUT:
            t0 = (h / 2 - th / 2) / h
            t1 = (h / 2 + th / 2) / h
            left = PGRAM_SLANT * (1 - t0)
            right = w - PGRAM_SLANT * t1
            if tw <= right - left - 2 * TEXT_PAD:
                return size
        else:
            if tw <= w - 2 * TEXT_PAD:
                return size
        size -= 0.5
    raise TextTooWide(node_id, text)


class _Walker:
    """Places nodes region by region, mirroring the structuring compiler."""

    def __init__(self, graph: FlowGraph):
        self.graph = graph
        self.nodes = graph.node_map()
        self.info = analyze(graph)
        self.end_ids = {n.id for n in graph.end_terminals()}
        self.forward_succ = {
            nid: [s for s in succs if (nid, s) not in self.info.back_edges]
            for nid, succs in self.info.succ.items()
        }
        self.pos: dict[str, Placement] = {}
        self.dec_meta: dict[str, dict] = {}
        self._journal: list[list[str]] = []
        self._reach: dict[str, set[str]] = {}

    def reach(self, nid: str) -> set[str]:
        if nid not in self._reach:
            self._reach[nid] = reachable_from(nid, self.forward_succ)
        return self._reach[nid]

    def place(self, nid: str, cx: float, top: float) -> Placement:
        if nid in self.pos:
            raise LayoutFallback(f"node {nid} visited twice")
        p = Placement(self.nodes[nid], cx, top)
        self.pos[nid] = p
        for journal in self._journal:
            journal.append(nid)
        return p

    def run(self) -> None:
        start = self.graph.start_node()
        p = self.place(start.id, 0.0, 0.0)
        succs = self.info.succ[start.id]
        if len(succs) != 1:
            raise LayoutFallback("start node must have one successor")
        if succs[0] not in self.end_ids:
            self.walk(succs[0], (), 0.0, p.bottom + VGAP, 0)
        bottom = max(pl.bottom for pl in self.pos.values())
        for end_id in sorted(self.end_ids):
            self.place(end_id, 0.0, bottom + VGAP)

    def walk(self, entry: str, stops: tuple[str, ...], x: float, y: float, depth: int) -> _Box:
        box = _Box()
        cur = entry
        while cur is not None and cur not in stops and cur not in self.end_ids:
            node = self.nodes[cur]
            if node.kind is BlockKind.DECISION:
                if cur in self.info.loop_nodes:
                    cur, sub = self.lay_loop(cur, stops, x, y, depth)
                else:
                    cur, sub = self.lay_branch(cur, stops, x, y, depth)
                box.merge(sub)
                y = sub.y1 + VGAP
            else:
                p = self.place(cur, x, y)
                box.add(p.left, p.top, p.right, p.bottom)
                y = p.bottom + VGAP
                succs = self.info.succ[cur]
                if len(succs) != 1:
                    raise LayoutFallback(f"unexpected fan-out at {cur}")
                cur = succs[0]
        return box

    def lay_branch(self, dec: str, stops, x: float, y: float, depth: int):
        p = self.place(dec, x, y)
        box = _Box()
        box.add(p.left, p.top, p.right, p.bottom)
        yes_s = self.info.labeled[dec]["yes"]
        no_s = self.info.labeled[dec]["no"]
        below = p.bottom + VGAP

        if no_s in self.reach(yes_s) and no_s not in stops and no_s not in self.end_ids:
            # elseless if: the No edge slides past the Yes region into the join
            ybox = self._sub_walk(yes_s, (no_s,) + stops, x, below, depth)
            box.merge(ybox)
            lane = max(box.x1, p.right) + LANE_GAP + depth * 6
            box.add(lane - 4, p.top, lane + 4, box.y1)
            self.dec_meta[dec] = {"kind": "if", "lane": lane}
            return no_s, box

        join = self.info.ipdom[dec]
        stop_plus = ((join,) if join is not None else ()) + stops
        ybox = self._sub_walk(yes_s, stop_plus, x, below, depth)
        box.merge(ybox)
        if no_s in self.end_ids or no_s in stops or no_s == join:
            # branch with no else content (the No edge exits the region)
            lane = max(box.x1, p.right) + LANE_GAP + depth * 6
            box.add(lane - 4, p.top, lane + 4, box.y1)
            self.dec_meta[dec] = {"kind": "ifexit", "lane": lane}
            return join, box
        right_edge = max(box.x1, p.right)
        else_cx = right_edge + COL_GAP + PROC_W / 2
        ebox, placed = self._sub_walk_journaled(no_s, stop_plus, else_cx, below, depth)
        if not ebox.empty and ebox.x0 < right_edge + COL_GAP / 2:
            dx = right_edge + COL_GAP / 2 - ebox.x0
            for nid in placed:
                self.pos[nid].cx += dx
            shifted = _Box(ebox.x0 + dx, ebox.y0, ebox.x1 + dx, ebox.y1)
            ebox = shifted
        box.merge(ebox)
        self.dec_meta[dec] = {"kind": "ifelse"}
        return join, box

    def lay_loop(self, header: str, stops, x: float, y: float, depth: int):
        p = self.place(header, x, y)
        box = _Box()
        box.add(p.left, p.top, p.right, p.bottom)
        yes_s = self.info.labeled[header]["yes"]
        no_s = self.info.labeled[header]["no"]
        members = self.info.loop_nodes[header]
        if yes_s not in members:
            raise LayoutFallback(f"loop body of {header} is not on the Yes branch")
        bbox = self._sub_walk(yes_s, (header,) + stops, x, p.bottom + VGAP, depth + 1)
        box.merge(bbox)
        n_back = sum(1 for (src, dst) in self.info.back_edges if dst == header)
        clear_base = box.y1 + 14.0
        back_lane = min(box.x0, p.left) - LANE_GAP - depth * 14
        exit_lane = max(box.x1, p.right) + LANE_GAP + depth * 14
        box.add(back_lane - 4, p.top, exit_lane + 4, clear_base + n_back * 10 + 4)
        self.dec_meta[header] = {
            "kind": "loop",
            "clear_base": clear_base,
            "back_lane": back_lane,
            "exit_lane": exit_lane,
        }
        return no_s, box

    def _sub_walk(self, entry, stops, x, y, depth) -> _Box:
        if entry in stops or entry in self.end_ids:
            return _Box()
        return self.walk(entry, stops, x, y, depth)

    def _sub_walk_journaled(self, entry, stops, x, y, depth):
        self._journal.append([])
        try:
            box = self._sub_walk(entry, stops, x, y, depth)
        finally:
            placed = self._journal.pop()
        return box, placed


def _stacked_layout(graph: FlowGraph) -> dict[str, Placement]:
    """Fallback for graphs outside the structured image: one column in
    linearized order. Edges may cross; geometry stays valid."""
    from ..flowgraph import linearize

    pos: dict[str, Placement] = {}
    y = 0.0
    for node in linearize(graph):
        p = Placement(node, 0.0, y)
        pos[node.id] = p
        y = p.bottom + VGAP
    return pos


class _Router:
    def __init__(self, graph: FlowGraph, pos: dict[str, Placement], dec_meta: dict[str, dict], structured: bool):
        self.graph = graph
        self.pos = pos
        self.dec_meta = dec_meta
        self.structured = structured
        self.info = analyze(graph)
        self.end_ids = {n.id for n in graph.end_terminals()}
        self.routes: list[Route] = []

    def run(self) -> list[Route]:
        edges = list(self.graph.edges)
        entry_offsets = self._entry_offsets(edges)
        back_index: dict[tuple[str, str], int] = {}
        grouped: dict[str, list[tuple[str, str]]] = {}
        for e in edges:
            if (e.src, e.dst) in self.info.back_edges:
                grouped.setdefault(e.dst, []).append((e.src, e.dst))
        for header, lst in grouped.items():
            lst.sort(key=lambda pair: (self.pos[pair[0]].top, self.pos[pair[0]].cx))
            for k, pair in enumerate(lst):
                back_index[pair] = k

        ret_edges = [
            e
            for e in edges
            if e.dst in self.end_ids
            and (e.src, e.dst) not in self.info.back_edges
            and not self._straight_clear(e.src, e.dst)
        ]
        ret_edges.sort(key=lambda e: -self._exit_point(e)[0][1])
        ret_lane_base = max(p.right for p in self.pos.values()) + 26.0
        ret_index = {(e.src, e.dst, e.label): k for k, e in enumerate(ret_edges)}

        for e in edges:
            key = (e.src, e.dst)
            if key in back_index:
                self.routes.append(self._route_back(e, back_index[key]))
            elif (e.src, e.dst, e.label) in ret_index:
                self.routes.append(self._route_return(e, ret_index[(e.src, e.dst, e.label)], ret_lane_base))
            else:
                self.routes.append(self._route_forward(e, entry_offsets.get((e.src, e.dst, e.label), 0.0)))
        return self.routes

    # -- geometry helpers --------------------------------------------------

    def _exit_point(self, e) -> tuple[tuple[float, float], tuple[float, float]]:
        """(point, direction) where the edge leaves the source shape."""
        u = self.pos[e.src]
        if u.node.kind is BlockKind.DECISION and e.label is EdgeLabel.NO:
            return (u.right, u.cy), (1.0, 0.0)
        return (u.cx, u.bottom), (0.0, 1.0)

    def _straight_clear(self, src: str, dst: str) -> bool:
        u, v = self.pos[src], self.pos[dst]
        if abs(u.cx - v.cx) > 0.5 or v.top <= u.bottom:
            return False
        if u.node.kind is BlockKind.DECISION:
            meta = self.dec_meta.get(src, {})
            if meta.get("kind") not in (None, "ifexit"):
                return False
        x = u.cx
        for nid, p in self.pos.items():
            if nid in (src, dst):
                continue
            if p.left - 2 <= x <= p.right + 2 and p.top < v.top and p.bottom > u.bottom:
                return False
        return True

    def _entry_offsets(self, edges) -> dict[tuple[str, str, EdgeLabel], float]:
        incoming: dict[str, list] = {}
        for e in edges:
            if (e.src, e.dst) in self.info.back_edges:
                continue
            if e.dst in self.end_ids and not self._straight_clear(e.src, e.dst):
                continue
            incoming.setdefault(e.dst, []).append(e)
        offsets: dict[tuple[str, str, EdgeLabel], float] = {}
        for dst, lst in incoming.items():
            lst.sort(key=lambda e: (self.pos[e.src].cx, self.pos[e.src].top))
            n = len(lst)
            width = self.pos[dst].w
            spread = min(26.0, (width - 30.0) / max(n - 1, 1))
            for i, e in enumerate(lst):
                offsets[(e.src, e.dst, e.label)] = (i - (n - 1) / 2.0) * spread
        return offsets

    def _label_box(self, e, exit_pt) -> TextBox | None:
        if e.label is EdgeLabel.YES:
            text = "Yes"
        elif e.label is EdgeLabel.NO:
            text = "No"
        else:
            return None
        w = text_width(text, LABEL_FONT)
        if e.label is EdgeLabel.YES:
            return TextBox(text, exit_pt[0] + 5.0, exit_pt[1] + 4.0, w, LABEL_FONT, LABEL_FONT)
        return TextBox(text, exit_pt[0] + 4.0, exit_pt[1] - LABEL_FONT - 4.0, w, LABEL_FONT, LABEL_FONT)

    def _route_forward(self, e, offset: float) -> Route:
        (ex, ey), _ = self._exit_point(e)
        v = self.pos[e.dst]
        entry_x = v.cx + offset
        entry_y = v.top
        u = self.pos[e.src]
        label_box = self._label_box(e, (ex, ey))
        meta = self.dec_meta.get(e.src, {}) if u.node.kind is BlockKind.DECISION else {}

        if u.node.kind is BlockKind.DECISION and e.label is EdgeLabel.NO:
            kind = meta.get("kind")
            if kind in ("if", "ifexit"):
                lane = meta["lane"]
                pts = [(ex, ey), (lane, ey), (lane, entry_y - APPROACH), (entry_x, entry_y - APPROACH), (entry_x, entry_y)]
            elif kind == "loop":
                lane = meta["exit_lane"]
                pts = [(ex, ey), (lane, ey), (lane, entry_y - APPROACH), (entry_x, entry_y - APPROACH), (entry_x, entry_y)]
            else:  # ifelse: straight over then down into the else column head
                pts = [(ex, ey), (entry_x, ey), (entry_x, entry_y)]
            return Route(_dedupe(pts), e.label.value, label_box)

        if abs(ex - entry_x) < 0.5 and self._straight_clear(e.src, e.dst):
            pts = [(ex, ey), (entry_x, entry_y)]
        elif abs(ex - entry_x) < 0.5 and entry_y > ey:
            pts = [(ex, ey), (ex, entry_y)]
        else:
            pts = [(ex, ey), (ex, entry_y - APPROACH), (entry_x, entry_y - APPROACH), (entry_x, entry_y)]
        label = e.label.value if e.label is not EdgeLabel.UNLABELED else None
        return Route(_dedupe(pts), label, label_box)

    def _route_back(self, e, k: int) -> Route:
        (ex, ey), _ = self._exit_point(e)
        header = self.pos[e.dst]
        meta = self.dec_meta.get(e.dst, {})
        clear_y = meta.get("clear_base", ey + 14.0) + k * 10.0
        lane = meta.get("back_lane", header.left - LANE_GAP) - k * 10.0
        t = 12.0 + k * 10.0
        entry = (header.left + t / 2, header.cy - t / 2)  # on the upper-left edge
        pts = [(ex, ey), (ex, clear_y), (lane, clear_y), (lane, entry[1]), entry]
        return Route(_dedupe(pts), e.label.value if e.label is not EdgeLabel.UNLABELED else None,
                     self._label_box(e, (ex, ey)))

    def _route_return(self, e, k: int, lane_base: float) -> Route:
        (ex, ey), direction = self._exit_point(e)
        end = self.pos[e.dst]
        lane = lane_base + k * 14.0
        drop_y = ey + 12.0 if direction == (0.0, 1.0) else ey
        approach_y = end.cy - 8.0 + (k % 3) * 8.0
        rx, ry = end.w / 2, end.h / 2
        dx = rx * math.sqrt(max(0.0, 1.0 - ((approach_y - end.cy) / ry) ** 2))
        entry = (end.cx + dx, approach_y)
        pts = [(ex, ey), (ex, drop_y), (lane, drop_y), (lane, approach_y), entry]
        return Route(_dedupe(pts), e.label.value if e.label is not EdgeLabel.UNLABELED else None,
                     self._label_box(e, (ex, ey)))


def _dedupe(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    out = [points[0]]
    for pt in points[1:]:
        if abs(pt[0] - out[-1][0]) > 1e-9 or abs(pt[1] - out[-1][1]) > 1e-9:
            out.append(pt)
    return out


def compute_layout(graph: FlowGraph) -> Layout:
    structured = True
    try:
        walker = _Walker(graph)
        walker.run()
        pos = walker.pos
        dec_meta = walker.dec_meta
        if set(pos) != {n.id for n in graph.nodes}:
            raise LayoutFallback("region walk missed nodes")
    except LayoutFallback:
        structured = False
        pos = _stacked_layout(graph)
        dec_meta = {}

    routes = _Router(graph, pos, dec_meta, structured).run()

    texts: list[TextBox] = []
    for node in graph.nodes:
        p = pos[node.id]
        font = fit_font(node.text, node.kind, node.id)
        w = text_width(node.text, font)
        texts.append(TextBox(node.text, p.cx - w / 2, p.cy - font / 2, w, font, font))

    box = _Box()
    for p in pos.values():
        box.add(p.left, p.top, p.right, p.bottom)
    for r in routes:
        for x, y in r.points:
            box.add(x, y, x, y)
        if r.label_box:
            box.add(r.label_box.x, r.label_box.y, r.label_box.x + r.label_box.w, r.label_box.y + r.label_box.h)
    bounds = (box.x0 - MARGIN, box.y0 - MARGIN, box.x1 + MARGIN, box.y1 + MARGIN)
    return Layout(graph, pos, routes, texts, bounds)
