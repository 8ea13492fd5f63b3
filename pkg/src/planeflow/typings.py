"""Interval typings and the bottom-up dynamic program over a reassembling.

A node ``X`` of the reassembling exposes *items*: its boundary edges and the
terminals it contains.  Every feasible partial flow inside ``X`` gives each
item a signed contribution (flow on an edge entering ``X``, minus the flow
on an edge leaving it, plus the excess of a source, minus that of a sink)
and the contributions sum to zero.  The node stores

    h(A) = max over feasible partial flows of the total contribution of A

for every item subset ``A``; the interval of ``A`` is ``[-h(P \\ A), h(A)]``
where ``P`` is the full item set.  ``h`` is the cut function of a network,
so these ``2^|P|`` numbers describe the set of feasible contribution
vectors exactly.  Gluing two children along their shared edges ``M`` gives

    h(A) = min over S subset of M of h_left(A_left + S) + h_right(A_right + S),

a min-plus product that numpy evaluates in one broadcast.  All arithmetic
is on integers after scaling by the common denominator.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import Disconnected, Infeasible, InfeasibleComponent, NoPath
from .network import ExtFlowNetwork, FlowNetwork, common_scale
from .outerplanarity import edge_outerplanarity, vertex_outerplanarity
from .preprocess import normalize, prepare_extended
from .reassembling import Reassembling, build_reassembling
from .transform import transform_network

__all__ = [
    "Item",
    "NodeTyping",
    "Typing",
    "induced_io",
    "satisfies",
    "leaf_typing",
    "merge_typings",
    "compute_typing",
    "max_flow_value",
    "flow_intervals",
    "PipelineStats",
]

Item = tuple[str, int]

_CHUNK = 1 << 22
_INT_LIMIT = 1 << 60


@dataclass(frozen=True)
class NodeTyping:
    """``h`` over bitmasks of ``items`` (bit i is ``items[i]``), scaled by ``scale``."""

    items: tuple[Item, ...]
    h: np.ndarray
    scale: int

    @property
    def full(self) -> int:
        return (1 << len(self.items)) - 1

    def mask(self, subset: Iterable) -> int:
        pos = {it: i for i, it in enumerate(self.items)}
        m = 0
        for it in subset:
            it = it if isinstance(it, tuple) else ("t", it)
            m |= 1 << pos[it]
        return m

    def interval(self, subset) -> tuple[Fraction, Fraction]:
        m = subset if isinstance(subset, (int, np.integer)) else self.mask(subset)
        return (
            Fraction(-int(self.h[self.full ^ m]), self.scale),
            Fraction(int(self.h[m]), self.scale),
        )

    def intervals(self) -> list[tuple[Fraction, Fraction]]:
        return [self.interval(m) for m in range(self.full + 1)]


@dataclass(frozen=True)
class Typing:
    """Intervals for every subset of the terminals, bitmask over ``terminals``."""

    terminals: tuple[int, ...]
    sources: frozenset[int]
    lo: tuple[Fraction, ...]
    hi: tuple[Fraction, ...]
    nodes: dict[int, NodeTyping] | None = field(default=None, compare=False, repr=False)

    def mask(self, subset: Iterable[int]) -> int:
        pos = {v: i for i, v in enumerate(self.terminals)}
        m = 0
        for v in subset:
            m |= 1 << pos[v]
        return m

    def interval(self, subset) -> tuple[Fraction, Fraction]:
        m = subset if isinstance(subset, int) else self.mask(subset)
        return self.lo[m], self.hi[m]

    def subsets(self) -> list[tuple[int, ...]]:
        T = self.terminals
        return [tuple(v for i, v in enumerate(T) if m >> i & 1) for m in range(1 << len(T))]

    def scaled(self, lam) -> "Typing":
        lam = Fraction(lam)
        return Typing(self.terminals, self.sources, tuple(x * lam for x in self.lo), tuple(x * lam for x in self.hi))

    def as_json(self) -> list[dict]:
        return [
            {"subset": list(A), "interval": [str(lo), str(hi)]}
            for A, lo, hi in zip(self.subsets(), self.lo, self.hi)
        ]


# --------------------------------------------------------------------------
# IO assignments


def induced_io(f: Sequence, N: ExtFlowNetwork | FlowNetwork) -> dict[int, Fraction]:
    """Excess entering at each source and leaving at each sink."""
    if isinstance(N, FlowNetwork):
        N = N.as_extended()
    G = N.G
    out = {}
    for v in N.terminals:
        inflow = sum((Fraction(f[e]) for e in G.rotation[v] if G.heads[e] == v), Fraction(0))
        outflow = sum((Fraction(f[e]) for e in G.rotation[v] if G.tails[e] == v), Fraction(0))
        out[v] = outflow - inflow if v in N.sources else inflow - outflow
    return out


def satisfies(g: Mapping[int, Fraction], tau: Typing) -> bool:
    if set(g) != set(tau.terminals):
        raise ValueError("g and the typing must share their terminals")
    signed = [Fraction(g[v]) if v in tau.sources else -Fraction(g[v]) for v in tau.terminals]
    for m in range(1 << len(tau.terminals)):
        x = sum((signed[i] for i in range(len(signed)) if m >> i & 1), Fraction(0))
        if not (tau.lo[m] <= x <= tau.hi[m]):
            return False
    return True


# --------------------------------------------------------------------------
# the dynamic program


def _subset_sums(vals: Sequence, dtype) -> np.ndarray:
    arr = np.zeros(1, dtype=dtype)
    for v in vals:
        arr = np.concatenate([arr, arr + v])
    return arr


def _regroup(h: np.ndarray, items: Sequence[Item], first: Sequence[Item], second: Sequence[Item]) -> np.ndarray:
    """View ``h`` as a matrix: rows are masks over ``first``, columns over ``second``."""
    p = len(items)
    pos = {it: i for i, it in enumerate(items)}
    if p == 0:
        return h.reshape(1, 1)
    axes = [p - 1 - pos[it] for it in reversed(first)] + [p - 1 - pos[it] for it in reversed(second)]
    cube = h.reshape((2,) * p).transpose(axes)
    return cube.reshape(1 << len(first), 1 << len(second))


def _check_feasible(h: np.ndarray, where: str) -> None:
    if h[0] < 0 or h[-1] < 0 or bool(np.any(h + h[::-1] < 0)):
        raise InfeasibleComponent(f"no feasible partial flow in {where}")


class _Context:
    """Integer view of an extended network shared by all nodes."""

    def __init__(self, N: ExtFlowNetwork) -> None:
        self.N = N
        self.scale = common_scale(list(N.upper) + list(N.lower))
        sc = self.scale
        self.up = [int(c * sc) for c in N.upper]
        self.lo = [int(c * sc) for c in N.lower]
        self.big = sum(self.up) + 1
        self.sources = set(N.sources)
        self.sinks = set(N.sinks)
        # worst case magnitude of any h value: every item box summed
        bound = 4 * (sum(self.up) + self.big * (len(N.sources) + len(N.sinks)) + 1)
        self.dtype = np.int64 if bound < _INT_LIMIT else object


def _leaf(ctx: _Context, v: int) -> NodeTyping:
    G = ctx.N.G
    items: list[Item] = [("e", e) for e in sorted(G.rotation[v])]
    lows, ups = [], []
    for _, e in items:
        if G.heads[e] == v:
            lows.append(ctx.lo[e])
            ups.append(ctx.up[e])
        else:
            lows.append(-ctx.up[e])
            ups.append(-ctx.lo[e])
    if v in ctx.sources:
        items.append(("t", v))
        lows.append(0)
        ups.append(ctx.big)
    elif v in ctx.sinks:
        items.append(("t", v))
        lows.append(-ctx.big)
        ups.append(0)
    sum_up = _subset_sums(ups, ctx.dtype)
    sum_lo = _subset_sums(lows, ctx.dtype)
    h = np.minimum(sum_up, -sum_lo[::-1])
    _check_feasible(h, f"leaf {v}")
    return NodeTyping(tuple(items), h, ctx.scale)


def leaf_typing(N: ExtFlowNetwork | FlowNetwork, v: int) -> NodeTyping:
    """Typing of the single vertex ``v`` from the box constraints on its items."""
    if isinstance(N, FlowNetwork):
        N = N.as_extended()
    return _leaf(_Context(N), v)


def merge_typings(left: NodeTyping, right: NodeTyping, matched: Iterable[Item] | None = None) -> NodeTyping:
    """Glue two disjoint nodes along their shared boundary edges."""
    if left.scale != right.scale:
        raise ValueError("children must share the integer scale")
    shared = sorted(set(left.items) & set(right.items))
    if matched is not None and sorted(matched) != shared:
        raise ValueError("matched must be exactly the common boundary")
    if any(kind != "e" for kind, _ in shared):
        raise ValueError("only edges can be matched")
    s_set = set(shared)
    lonly = [it for it in left.items if it not in s_set]
    ronly = [it for it in right.items if it not in s_set]
    hl = _regroup(left.h, left.items, lonly, shared)
    hr = _regroup(right.h, right.items, ronly, shared)
    rows_r, rows_l = hr.shape[0], hl.shape[0]
    width = hl.shape[1]
    step = max(1, _CHUNK // max(1, rows_l * width))
    parts = []
    for a in range(0, rows_r, step):
        block = hr[a:a + step, None, :] + hl[None, :, :]
        parts.append(block.min(axis=2))
    res = np.concatenate(parts, axis=0) if len(parts) > 1 else parts[0]
    # res[r, l]: flat index r * 2^|lonly| + l, so lonly are the low bits
    flat = res.reshape(-1)
    items = tuple(sorted(lonly + ronly))
    h = _regroup(flat, lonly + ronly, items, []).reshape(-1)
    h = np.ascontiguousarray(h)
    _check_feasible(h, "merged node")
    return NodeTyping(items, h, left.scale)


def compute_typing(
    N: ExtFlowNetwork | FlowNetwork, B: Reassembling, keep_nodes: bool = False
) -> Typing:
    """Fold leaf and merge typings bottom-up; the root yields the terminal typing."""
    if isinstance(N, FlowNetwork):
        N = N.as_extended()
    ctx = _Context(N)
    n = B.n
    table: dict[int, NodeTyping] = {}
    kept: dict[int, NodeTyping] | None = {} if keep_nodes else None
    for v in range(n):
        table[v] = _leaf(ctx, v)
        if kept is not None:
            kept[v] = table[v]
    for x in range(n, B.size):
        a, b = B.left[x], B.right[x]
        try:
            node = merge_typings(table.pop(a), table.pop(b))
        except InfeasibleComponent as exc:
            raise InfeasibleComponent(f"node {x}: {exc}") from None
        table[x] = node
        if kept is not None:
            kept[x] = node
    root = table[B.root]
    terms = tuple(sorted(N.terminals))
    if tuple(v for _, v in root.items) != terms or any(k != "t" for k, _ in root.items):
        raise AssertionError("root items must be exactly the terminals")
    lo, hi = zip(*root.intervals())
    return Typing(terms, frozenset(N.sources), tuple(lo), tuple(hi), kept)


# --------------------------------------------------------------------------
# pipelines


@dataclass
class PipelineStats:
    n: int = 0
    m: int = 0
    k: int = 0
    k_V: int = 0
    alpha: int = 0
    segments: int = 0
    timings: dict[str, int] = field(default_factory=dict)
    actions: list = field(default_factory=list)

    def tick(self, stage: str, t0: float) -> float:
        now = time.perf_counter()
        self.timings[stage] = self.timings.get(stage, 0) + int((now - t0) * 1e6)
        return now


def _typing_of(N: ExtFlowNetwork, stats: PipelineStats, t0: float) -> tuple[Typing, float]:
    T = transform_network(N)
    t0 = stats.tick("transform", t0)
    L = edge_outerplanarity(T.graph)
    stats.k = max(stats.k, L.k)
    t0 = stats.tick("outerplanarity", t0)
    B = build_reassembling(T.graph, L)
    stats.alpha = max(stats.alpha, B.alpha)
    t0 = stats.tick("reassemble", t0)
    tau = compute_typing(T.network(), B)
    t0 = stats.tick("typing", t0)
    return tau, t0


def max_flow_value(N: FlowNetwork, stats: PipelineStats | None = None) -> Fraction:
    """Value of a maximum s-t flow, read from the typing of the transformed network."""
    stats = stats if stats is not None else PipelineStats()
    stats.n, stats.m = N.G.n, N.G.m
    t0 = time.perf_counter()
    stats.k_V = vertex_outerplanarity(N.G)
    try:
        nets, report = normalize(N)
    except (NoPath, Disconnected) as exc:
        stats.actions.append({"kind": "no-path", "reason": str(exc)})
        stats.tick("preprocess", t0)
        return Fraction(0)
    stats.actions.extend(a.as_json() for a in report.actions)
    stats.segments = len(report.segments)
    t0 = stats.tick("preprocess", t0)
    values = []
    for seg in report.segments:
        if seg.network is None:
            values.append(seg.value)
            continue
        tau, t0 = _typing_of(seg.network.as_extended(), stats, t0)
        lo, hi = tau.interval([seg.network.s])
        if lo != 0:
            raise AssertionError(f"zero flow must be feasible, got lower end {lo}")
        values.append(hi)
    return report.combine(values)


def flow_intervals(N: ExtFlowNetwork, stats: PipelineStats | None = None) -> Typing:
    """Typing of a multi-terminal network with lower bounds."""
    stats = stats if stats is not None else PipelineStats()
    stats.n, stats.m = N.G.n, N.G.m
    t0 = time.perf_counter()
    stats.k_V = vertex_outerplanarity(N.G)
    P = prepare_extended(N)
    stats.segments = 1
    t0 = stats.tick("preprocess", t0)
    try:
        tau, _ = _typing_of(P, stats, t0)
    except InfeasibleComponent as exc:
        raise Infeasible(f"no feasible flow: {exc}") from None
    return tau
