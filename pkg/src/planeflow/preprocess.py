"""Bring a plane flow network into the normal form the pipeline expects.

The normal form has no self-loops, every vertex of degree at least three and
a biconnected undirected view.  Three reductions get there:

* blocks: keep only the blocks on the block-cut path from ``s`` to ``t``;
  each becomes its own segment and the answer is the minimum over segments,
  since every unit of flow crosses every cut vertex on that path;
* degree-2 chains ``v1 -> v -> v2`` collapse to one edge with the smaller
  capacity (added onto an existing ``v1 -> v2`` edge if there is one);
* a terminal of degree 2 gets the three-vertex zero-capacity gadget.

Each segment records its actions so :meth:`NormalizationReport.replay`
can rebuild it from the original network.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import networkx as nx

from .errors import AssumptionViolation, Disconnected, ForbiddenConfig, NoPath
from .graph_core import EmbeddingEditor, PlaneDiGraph, UndirectedView, undirect
from .network import ExtFlowNetwork, FlowNetwork

__all__ = [
    "FlowNetwork",
    "Action",
    "Segment",
    "NormalizationReport",
    "biconnected_components",
    "reduce_by_blocks",
    "contract_degree2",
    "fix_terminal_degrees",
    "normalize",
    "check_assumption",
]


@dataclass(frozen=True)
class Action:
    kind: str
    detail: dict[str, Any] = field(default_factory=dict)

    def as_json(self) -> dict[str, Any]:
        return {"kind": self.kind, **{k: v for k, v in self.detail.items()}}


@dataclass(frozen=True)
class Segment:
    """One piece of the reduced instance: a normalized network or a settled value."""

    network: FlowNetwork | None
    value: Fraction | None
    actions: tuple[Action, ...]
    vertex_map: tuple[int, ...] = ()
    edge_map: tuple[int, ...] = ()


@dataclass(frozen=True)
class NormalizationReport:
    segments: tuple[Segment, ...]
    actions: tuple[Action, ...]

    def combine(self, values) -> Fraction:
        """Answer of the original instance from one value per segment."""
        vals = list(values)
        if len(vals) != len(self.segments):
            raise ValueError("one value per segment expected")
        return min(vals) if vals else Fraction(0)

    @property
    def networks(self) -> list[FlowNetwork]:
        return [s.network for s in self.segments if s.network is not None]

    def replay(self, N: FlowNetwork) -> list[FlowNetwork | Fraction]:
        """Re-apply the recorded actions to the original network."""
        out: list[FlowNetwork | Fraction] = []
        for seg in self.segments:
            state: _Work | None = None
            for act in seg.actions:
                if act.kind == "extract-block":
                    d = act.detail
                    state = _Work.from_edges(N, d["edges"], d["entry"], d["exit"], d["outer"])
                elif act.kind == "direct-value":
                    state = None
                    out.append(Fraction(act.detail["value"]))
                else:
                    assert state is not None
                    _apply(state, act)
            if state is not None:
                out.append(state.freeze()[0])
        return out


# --------------------------------------------------------------------------
# blocks


def biconnected_components(U: UndirectedView) -> tuple[list[list[int]], list[int]]:
    """Blocks as sorted lists of undirected edge ids, plus the cut vertices."""
    g = nx.Graph()
    g.add_nodes_from(range(U.n))
    for i, (a, b) in enumerate(U.pairs):
        g.add_edge(a, b, id=i)
    blocks = [sorted(g.edges[a, b]["id"] for a, b in comp) for comp in nx.biconnected_component_edges(g)]
    blocks.sort(key=lambda b: b[0])
    cuts = sorted(nx.articulation_points(g))
    return blocks, cuts


def _reachable(G: PlaneDiGraph, s: int, t: int) -> bool:
    seen = {s}
    q = deque([s])
    while q:
        v = q.popleft()
        if v == t:
            return True
        for e in G.rotation[v]:
            if G.tails[e] == v and G.heads[e] not in seen:
                seen.add(G.heads[e])
                q.append(G.heads[e])
    return False


def _block_path(U: UndirectedView, blocks, cuts, s: int, t: int) -> list[tuple[int, int, int]]:
    """(block index, entry, exit) along the block-cut tree path from s to t."""
    cutset = set(cuts)
    blocks_of: dict[int, list[int]] = {}
    for i, blk in enumerate(blocks):
        vs = {x for u in blk for x in U.pairs[u]}
        for v in vs:
            blocks_of.setdefault(v, []).append(i)

    def node(v):
        return ("c", v) if v in cutset else ("b", blocks_of[v][0])

    def nbrs(x):
        if x[0] == "c":
            return [("b", i) for i in blocks_of[x[1]]]
        blk = blocks[x[1]]
        vs = sorted({v for u in blk for v in U.pairs[u]} & cutset)
        return [("c", v) for v in vs]

    start, goal = node(s), node(t)
    prev = {start: None}
    q = deque([start])
    while q:
        x = q.popleft()
        if x == goal:
            break
        for y in nbrs(x):
            if y not in prev:
                prev[y] = x
                q.append(y)
    if goal not in prev:
        raise Disconnected("s and t lie in different components")
    path = []
    x = goal
    while x is not None:
        path.append(x)
        x = prev[x]
    path.reverse()
    out = []
    for i, x in enumerate(path):
        if x[0] != "b":
            continue
        entry = path[i - 1][1] if i > 0 else s
        exit_ = path[i + 1][1] if i + 1 < len(path) else t
        out.append((x[1], entry, exit_))
    return out


# --------------------------------------------------------------------------
# working state shared by the rewrites and by replay


class _Work:
    def __init__(self, G: PlaneDiGraph, cap, s: int, t: int, vorig, eorig, lower=None) -> None:
        self.ed = EmbeddingEditor(G)
        self.cap = list(cap)
        self.lower = list(lower) if lower is not None else [Fraction(0)] * len(self.cap)
        self.s, self.t = s, t
        self.vorig = list(vorig)
        self.eorig = list(eorig)
        self.alive = G.n

    @classmethod
    def from_network(cls, N: FlowNetwork) -> "_Work":
        return cls(N.G, N.capacity, N.s, N.t, range(N.G.n), range(N.G.m))

    @classmethod
    def from_edges(cls, N: FlowNetwork, edges, entry: int, exit_: int, outer: int) -> "_Work":
        w = cls.from_network(N)
        keep = set(edges)
        ed = w.ed
        for e in range(N.G.m):
            if e not in keep:
                ed.edge_alive[e] = False
        for v in range(N.G.n):
            ed.rot[v] = [e for e in ed.rot[v] if e in keep]
            if not ed.rot[v]:
                ed.vertex_alive[v] = False
                w.alive -= 1
        ed.outer = outer
        w.s, w.t = entry, exit_
        return w

    def has_edge(self, a: int, b: int) -> int | None:
        for e in self.ed.rot[a]:
            if self.ed.tails[e] == a and self.ed.heads[e] == b:
                return e
        return None

    def freeze(self) -> tuple[FlowNetwork, list[int], list[int]]:
        G, vmap, emap = self.ed.freeze()
        cap = [Fraction(0)] * G.m
        eo = [-1] * G.m
        for e, ne in enumerate(emap):
            if ne >= 0:
                cap[ne] = self.cap[e]
                eo[ne] = self.eorig[e] if e < len(self.eorig) else -1
        vo = [-1] * G.n
        for v, nv in enumerate(vmap):
            if nv >= 0:
                vo[nv] = self.vorig[v] if v < len(self.vorig) else -1
        return FlowNetwork(G, tuple(cap), vmap[self.s], vmap[self.t]), vo, eo


def _apply(w: _Work, act: Action) -> None:
    ed = w.ed
    d = act.detail
    if act.kind == "chain-contracted":
        v, e_in, e_out = d["vertex"], d["e_in"], d["e_out"]
        new_cap = min(w.cap[e_in], w.cap[e_out])
        target = d["merged_into"]
        if target is not None:
            w.cap[target] += new_cap
            ed.delete_vertex(v)
        else:
            # e_in now runs the whole chain; darts of e_out move onto it
            v2 = ed.heads[e_out]
            if ed.outer is not None and ed.outer >> 1 == e_out:
                ed.outer = 2 * e_in + (ed.outer & 1)
            ed.heads[e_in] = v2
            ed.replace_in_rotation(v2, e_out, e_in)
            ed.edge_alive[e_out] = False
            ed.rot[v] = []
            ed.vertex_alive[v] = False
            w.cap[e_in] = new_cap
        w.alive -= 1
    elif act.kind == "circulation-dropped":
        ed.delete_vertex(d["vertex"])
        w.alive -= 1
    elif act.kind == "gadget-added":
        _gadget(w, d["terminal"])
    else:  # pragma: no cover
        raise ValueError(f"unknown action {act.kind}")


def _gadget(w: _Work, x: int) -> None:
    ed = w.ed
    rot = ed.rot[x]
    e_low, e_hi = min(rot), max(rot)
    halves = []
    for e in (e_low, e_hi):
        mid, e2 = ed.subdivide(e)
        w.cap.append(w.cap[e])
        w.lower.append(w.lower[e])
        near, far = (e, e2) if ed.tails[e] == x else (e2, e)
        halves.append((mid, near, far))
    (v2, low_near, low_far), (v3, hi_near, hi_far) = halves
    v1 = ed.add_vertex()
    g0 = ed.add_edge(v1, x)
    g2 = ed.add_edge(v1, v2)
    g3 = ed.add_edge(v1, v3)
    w.cap.extend([Fraction(0)] * 3)
    w.lower.extend([Fraction(0)] * 3)
    w.alive += 3
    # v1 sits in the face of the corner low_near -> hi_near at x
    ed.insert_after(x, low_near, g0)
    ed.rot[v2] = [low_far, g2, low_near]
    ed.rot[v3] = [hi_near, g3, hi_far]
    ed.rot[v1] = [g3, g0, g2]


def _block_outer_dart(G: PlaneDiGraph, U: UndirectedView, blocks, cuts, bi: int) -> int:
    """A dart on the face of block ``bi`` that contains the unbounded region."""
    edge_block = [0] * G.m
    for i, blk in enumerate(blocks):
        for u in blk:
            for e in U.directed[u]:
                edge_block[e] = i
    outer_face = G.faces.faces[G.faces.outer]
    touching = {edge_block[d >> 1] for d in outer_face}
    if bi in touching:
        return next(d for d in outer_face if edge_block[d >> 1] == bi)
    # walk the block-cut tree from bi to the nearest block on the outer face
    cutset = set(cuts)
    verts = [sorted({v for u in blk for v in U.pairs[u]}) for blk in blocks]
    blocks_at: dict[int, list[int]] = {}
    for i, vs in enumerate(verts):
        for v in vs:
            if v in cutset:
                blocks_at.setdefault(v, []).append(i)
    prev: dict[int, tuple[int, int] | None] = {bi: None}
    q = deque([bi])
    goal = None
    while q:
        b = q.popleft()
        if b in touching:
            goal = b
            break
        for c in verts[b]:
            for b2 in blocks_at.get(c, ()):
                if b2 not in prev:
                    prev[b2] = (b, c)
                    q.append(b2)
    assert goal is not None
    b = goal
    while prev[b][0] != bi:
        b = prev[b][0]
    c = prev[b][1]
    rot = G.rotation[c]
    i = next(j for j, e in enumerate(rot) if edge_block[e] == b)
    while edge_block[rot[i]] != bi:
        i = (i + 1) % len(rot)
    e = rot[i]
    return 2 * e + (0 if G.tails[e] == c else 1)


# --------------------------------------------------------------------------
# public operations


def reduce_by_blocks(N: FlowNetwork) -> tuple[list[tuple[FlowNetwork, list[int], list[int], Action]], NormalizationReport]:
    """Split ``N`` along the block-cut path from s to t.

    Returns one ``(network, vertex_map, edge_map, action)`` per block on the
    path together with a report whose :meth:`combine` takes the minimum.
    """
    G = N.G
    U = undirect(G)
    if not G.rotation[N.s] or not G.rotation[N.t]:
        raise Disconnected("a terminal is isolated")
    if not _reachable(G, N.s, N.t):
        raise NoPath(f"no directed path from {N.s} to {N.t}")
    blocks, cuts = biconnected_components(U)
    path = _block_path(U, blocks, cuts, N.s, N.t)
    out = []
    segs = []
    for bi, entry, exit_ in path:
        edges = sorted(e for u in blocks[bi] for e in U.directed[u])
        if len(blocks) == 1:
            outer = G.outer_dart
        else:
            outer = _block_outer_dart(G, U, blocks, cuts, bi)
        act = Action(
            "extract-block",
            {"block": bi, "edges": edges, "entry": entry, "exit": exit_, "outer": outer},
        )
        if len(blocks) == 1:
            net, vo, eo = N, list(range(G.n)), list(range(G.m))
        else:
            net, vo, eo = _Work.from_edges(N, edges, entry, exit_, outer).freeze()
        out.append((net, vo, eo, act))
        segs.append(Segment(net, None, (act,), tuple(vo), tuple(eo)))
    top = []
    if len(blocks) > 1:
        top.append(Action("discard-blocks", {"kept": [p[0] for p in path], "total": len(blocks)}))
    if len(path) > 1:
        top.append(Action("cut-vertex-split", {"cut_vertices": [p[2] for p in path[:-1]]}))
    return out, NormalizationReport(tuple(segs), tuple(top))


def _contract(w: _Work) -> list[Action]:
    ed = w.ed
    acts: list[Action] = []
    work = deque(v for v in range(ed.n) if ed.vertex_alive[v] and ed.degree(v) == 2)
    while work:
        v = work.popleft()
        if not ed.vertex_alive[v] or ed.degree(v) != 2 or v in (w.s, w.t):
            continue
        if w.alive <= 2:
            break
        a, b = ed.rot[v]
        ins = [e for e in (a, b) if ed.heads[e] == v]
        if len(ins) != 1:
            kind = "(b)" if not ins else "(c)"
            raise ForbiddenConfig(f"degree-2 vertex {v} is in configuration {kind}")
        e_in = ins[0]
        e_out = b if e_in == a else a
        v1, v2 = ed.tails[e_in], ed.heads[e_out]
        if v1 == v2:
            act = Action("circulation-dropped", {"vertex": v})
        else:
            existing = w.has_edge(v1, v2)
            act = Action(
                "chain-contracted",
                {"vertex": v, "e_in": e_in, "e_out": e_out, "merged_into": existing},
            )
        _apply(w, act)
        acts.append(act)
        for u in (v1, v2):
            if ed.vertex_alive[u] and ed.degree(u) == 2:
                work.append(u)
    return acts


def contract_degree2(N: FlowNetwork) -> FlowNetwork:
    w = _Work.from_network(N)
    _contract(w)
    return w.freeze()[0]


def _fix_terminals(w: _Work) -> list[Action]:
    acts = []
    for x in (w.s, w.t):
        if w.ed.degree(x) == 2:
            act = Action("gadget-added", {"terminal": x})
            _apply(w, act)
            acts.append(act)
    return acts


def fix_terminal_degrees(N: FlowNetwork) -> FlowNetwork:
    w = _Work.from_network(N)
    _fix_terminals(w)
    return w.freeze()[0]


def check_assumption(G: PlaneDiGraph, biconnected_known: bool = False) -> list[str]:
    """Violated conditions of the normal form, empty when it holds."""
    problems = []
    if any(t == h for t, h in zip(G.tails, G.heads)):
        problems.append("self-loop")
    low = [v for v in range(G.n) if G.degree(v) < 3]
    if low:
        problems.append(f"degree < 3 at {low[:5]}")
    if G.n >= 2 and not biconnected_known:
        U = undirect(G)
        g = nx.Graph(list(U.pairs))
        g.add_nodes_from(range(G.n))
        if not nx.is_biconnected(g):
            problems.append("undirected view not biconnected")
    return problems


def _direct_value(net: FlowNetwork) -> Fraction:
    idx = net.G.edge_index
    e = idx.get((net.s, net.t))
    return net.capacity[e] if e is not None else Fraction(0)


def normalize(N: FlowNetwork) -> tuple[list[FlowNetwork], NormalizationReport]:
    """Normal-form segments of ``N`` and the report that recombines them.

    Segments small enough to read off directly (two vertices) carry their
    value in the report instead of a network.
    """
    pieces, top = reduce_by_blocks(N)
    segments = []
    nets = []
    for net, vo, eo, extract in pieces:
        if net is N:
            w = _Work.from_network(N)
        else:
            # rewrite on the block inside N so recorded ids are original ones, as replay expects
            d = extract.detail
            w = _Work.from_edges(N, d["edges"], d["entry"], d["exit"], d["outer"])
        acts = [extract]
        if w.alive > 2:
            acts += _contract(w)
        if w.alive > 2:
            acts += _fix_terminals(w)
        if len(acts) > 1:
            final, vmap, emap = w.freeze()
        else:
            final, vmap, emap = net, vo, eo
        if final.G.n <= 2:
            val = _direct_value(final)
            acts.append(Action("direct-value", {"value": str(val)}))
            segments.append(Segment(None, val, tuple(acts), tuple(vmap), tuple(emap)))
            continue
        # blocks are biconnected and both rewrites keep them so; degrees are the open question
        bad = check_assumption(final.G, biconnected_known=True)
        if bad:
            raise AssumptionViolation("normalization left: " + "; ".join(bad))
        segments.append(Segment(final, None, tuple(acts), tuple(vmap), tuple(emap)))
        nets.append(final)
    actions = list(top.actions) + [a for s in segments for a in s.actions if a.kind != "extract-block"]
    return nets, NormalizationReport(tuple(segments), tuple(actions))


def prepare_extended(N: ExtFlowNetwork) -> ExtFlowNetwork:
    """Check the normal form for a multi-terminal network, padding degree-2 terminals."""
    G = N.G
    problems = []
    if G.n >= 2:
        g = nx.Graph([(t, h) for t, h in zip(G.tails, G.heads)])
        g.add_nodes_from(range(G.n))
        if not nx.is_biconnected(g):
            problems.append("undirected view not biconnected")
    terms = set(N.sources) | set(N.sinks)
    low = [v for v in range(G.n) if G.degree(v) < 3 and not (v in terms and G.degree(v) == 2)]
    if low:
        problems.append(f"degree < 3 at {low[:5]}")
    if problems:
        raise AssumptionViolation("; ".join(problems))
    pad = [v for v in sorted(terms) if G.degree(v) == 2]
    if not pad:
        return N
    w = _Work(G, N.upper, N.sources[0], N.sinks[0], range(G.n), range(G.m), N.lower)
    for x in pad:
        _gadget(w, x)
    H, vmap, emap = w.ed.freeze()
    up = [Fraction(0)] * H.m
    lo = [Fraction(0)] * H.m
    for e, ne in enumerate(emap):
        if ne >= 0:
            up[ne] = w.cap[e]
            lo[ne] = w.lower[e]
    return ExtFlowNetwork(
        H, tuple(up), tuple(lo),
        tuple(sorted(vmap[s] for s in N.sources)), tuple(sorted(vmap[t] for t in N.sinks)),
    )
