"""Reference solvers the pipeline is checked against.

Nothing here is on the linear-time path.  Dinic's algorithm runs on
capacities scaled to integers; projections of flow polytopes go through
the exact simplex in :mod:`planeflow.lp`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import Infeasible
from .lp import ExactLP, LPInfeasible, Unbounded
from .network import ExtFlowNetwork, FlowNetwork, common_scale

__all__ = [
    "OracleFlow",
    "dinic_max_flow",
    "feasible_flow_with_lower_bounds",
    "verify_flow",
    "ComponentLP",
    "project_interval",
    "component_items",
]


@dataclass(frozen=True)
class OracleFlow:
    flow: tuple[Fraction, ...]
    value: Fraction
    cut: frozenset[int] = frozenset()
    cut_edges: tuple[int, ...] = ()


class _Dinic:
    def __init__(self, n: int) -> None:
        self.n = n
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add(self, u: int, v: int, c: int) -> int:
        i = len(self.to)
        self.to += [v, u]
        self.cap += [c, 0]
        self.adj[u].append(i)
        self.adj[v].append(i + 1)
        return i

    def _levels(self, s: int) -> list[int]:
        level = [-1] * self.n
        level[s] = 0
        frontier = [s]
        to, cap, adj = self.to, self.cap, self.adj
        while frontier:
            nxt = []
            for u in frontier:
                lu = level[u] + 1
                for i in adj[u]:
                    v = to[i]
                    if cap[i] > 0 and level[v] < 0:
                        level[v] = lu
                        nxt.append(v)
            frontier = nxt
        return level

    def run(self, s: int, t: int) -> int:
        to, cap, adj = self.to, self.cap, self.adj
        total = 0
        while True:
            level = self._levels(s)
            if level[t] < 0:
                return total
            it = [0] * self.n
            path: list[int] = []
            u = s
            while True:
                if u == t:
                    b = min(cap[i] for i in path)
                    for i in path:
                        cap[i] -= b
                        cap[i ^ 1] += b
                    total += b
                    k = next(j for j, i in enumerate(path) if cap[i] == 0)
                    del path[k:]
                    u = to[path[-1]] if path else s
                    continue
                row = adj[u]
                while it[u] < len(row):
                    i = row[it[u]]
                    if cap[i] > 0 and level[to[i]] == level[u] + 1:
                        break
                    it[u] += 1
                if it[u] < len(row):
                    i = row[it[u]]
                    path.append(i)
                    u = to[i]
                    continue
                if u == s:
                    break
                level[u] = -1
                i = path.pop()
                u = to[i ^ 1]
                it[u] += 1

    def reaching(self, t: int) -> list[bool]:
        """Vertices with a residual path to ``t``."""
        seen = [False] * self.n
        seen[t] = True
        stack = [t]
        while stack:
            v = stack.pop()
            for i in self.adj[v]:
                u = self.to[i]
                if self.cap[i ^ 1] > 0 and not seen[u]:
                    seen[u] = True
                    stack.append(u)
        return seen


def dinic_max_flow(N: FlowNetwork) -> OracleFlow:
    """Maximum s-t flow with a minimum cut certifying its value.

    ``cut`` is the source side of the minimum cut closest to the sink.
    """
    G = N.G
    scale = common_scale(N.capacity)
    D = _Dinic(G.n)
    arcs = [D.add(G.tails[e], G.heads[e], int(N.capacity[e] * scale)) for e in range(G.m)]
    value = D.run(N.s, N.t)
    flow = tuple(Fraction(D.cap[a ^ 1], scale) for a in arcs)
    # sink-side minimal cut: everything that cannot reach t in the residual graph
    side = [not r for r in D.reaching(N.t)]
    cut = frozenset(v for v in range(G.n) if side[v])
    cut_edges = tuple(e for e in range(G.m) if side[G.tails[e]] and not side[G.heads[e]])
    out = OracleFlow(flow, Fraction(value, scale), cut, cut_edges)
    verify_flow(N.as_extended(), out.flow)
    if sum((N.capacity[e] for e in cut_edges), Fraction(0)) != out.value:
        raise AssertionError("min cut does not certify the flow value")
    return out


def verify_flow(N: ExtFlowNetwork, f: Sequence[Fraction], g: Mapping[int, Fraction] | None = None) -> dict[int, Fraction]:
    """Check bounds and conservation; return the induced terminal excesses."""
    G = N.G
    if len(f) != G.m:
        raise AssertionError("flow must be total on the edges")
    net = [Fraction(0)] * G.n  # inflow - outflow
    for e in range(G.m):
        if not (N.lower[e] <= f[e] <= N.upper[e]):
            raise AssertionError(f"edge {e}: {f[e]} outside [{N.lower[e]}, {N.upper[e]}]")
        net[G.heads[e]] += f[e]
        net[G.tails[e]] -= f[e]
    terms = set(N.terminals)
    for v in range(G.n):
        if v not in terms and net[v] != 0:
            raise AssertionError(f"conservation fails at {v}")
    io = {s: -net[s] for s in N.sources}
    io.update({t: net[t] for t in N.sinks})
    if any(x < 0 for x in io.values()):
        raise AssertionError("negative terminal excess")
    if g is not None:
        for v, x in g.items():
            if io[v] != Fraction(x):
                raise AssertionError(f"terminal {v}: excess {io[v]} != pinned {x}")
    return io


def feasible_flow_with_lower_bounds(N: ExtFlowNetwork, g: Mapping[int, Fraction]) -> OracleFlow | None:
    """A flow within the bounds whose terminal excesses are exactly ``g``."""
    G = N.G
    if set(g) != set(N.terminals):
        raise ValueError("g must be defined exactly on the terminals")
    g = {v: Fraction(x) for v, x in g.items()}
    if any(x < 0 for x in g.values()):
        return None
    scale = common_scale(list(N.upper) + list(N.lower) + list(g.values()))
    need = [0] * G.n  # required (inflow - outflow) of the residual part
    for v in N.sources:
        need[v] -= int(g[v] * scale)
    for v in N.sinks:
        need[v] += int(g[v] * scale)
    D = _Dinic(G.n + 2)
    ss, tt = G.n, G.n + 1
    arcs = []
    for e in range(G.m):
        lo, hi = int(N.lower[e] * scale), int(N.upper[e] * scale)
        arcs.append(D.add(G.tails[e], G.heads[e], hi - lo))
        need[G.heads[e]] -= lo
        need[G.tails[e]] += lo
    if sum(need):  # sources and sinks disagree on the total
        return None
    demand = 0
    for v in range(G.n):
        if need[v] > 0:
            D.add(v, tt, need[v])
            demand += need[v]
        elif need[v] < 0:
            D.add(ss, v, -need[v])
    if D.run(ss, tt) != demand:
        return None
    flow = tuple(Fraction(D.cap[a ^ 1] + int(N.lower[e] * scale), scale) for e, a in enumerate(arcs))
    verify_flow(N, flow, g)
    value = sum((g[s] for s in N.sources), Fraction(0))
    return OracleFlow(flow, value)


# --------------------------------------------------------------------------
# polytope projections


def component_items(N: ExtFlowNetwork, X: Iterable[int]) -> list[tuple[str, int]]:
    """Boundary edges of X (by id) then the terminals inside X."""
    xs = set(X)
    G = N.G
    edges = [("e", e) for e in range(G.m) if (G.tails[e] in xs) != (G.heads[e] in xs)]
    terms = [("t", v) for v in sorted(xs) if v in set(N.terminals)]
    return edges + terms


class ComponentLP:
    """Partial flows on the edges touching ``X`` that conserve inside ``X``.

    Terminal excesses inside ``X`` are free nonnegative variables, and the
    functional for an item subset is the net injection into ``X`` through it.
    """

    def __init__(self, N: ExtFlowNetwork, X: Iterable[int]) -> None:
        G = N.G
        xs = sorted(set(X))
        inside = set(xs)
        self.items = component_items(N, xs)
        edges = [e for e in range(G.m) if G.tails[e] in inside or G.heads[e] in inside]
        terms = [v for _, v in self.items if _ == "t"]
        self.scale = common_scale([N.upper[e] for e in edges] + [N.lower[e] for e in edges])
        sc = self.scale
        ne, nt = len(edges), len(terms)
        # columns: shifted flow x_e = f_e - lower_e, bound slack u_e, terminal excess g_v
        ncols = 2 * ne + nt
        col_e = {e: i for i, e in enumerate(edges)}
        col_t = {v: 2 * ne + i for i, v in enumerate(terms)}
        row_of = {v: i for i, v in enumerate(xs)}
        A = [[0] * ncols for _ in range(len(xs) + ne)]
        b = [0] * (len(xs) + ne)
        sources = set(N.sources)
        for e in edges:
            lo = int(N.lower[e] * sc)
            hi = int(N.upper[e] * sc)
            h, t = G.heads[e], G.tails[e]
            if h in inside:
                A[row_of[h]][col_e[e]] += 1
                b[row_of[h]] -= lo
            if t in inside:
                A[row_of[t]][col_e[e]] -= 1
                b[row_of[t]] += lo
            r = len(xs) + col_e[e]
            A[r][col_e[e]] = 1
            A[r][ne + col_e[e]] = 1
            b[r] = hi - lo
        for v in terms:
            A[row_of[v]][col_t[v]] = 1 if v in sources else -1
        self._edges_lo = {e: int(N.lower[e] * sc) for e in edges}
        self._col_e, self._col_t = col_e, col_t
        self._sources = sources
        self._ncols = ncols
        self._G = G
        self._inside = inside
        try:
            self.lp: ExactLP | None = ExactLP(A, b)
        except LPInfeasible:
            self.lp = None

    def functional(self, subset: Iterable[tuple[str, int]]) -> tuple[list[int], int]:
        c = [0] * self._ncols
        const = 0
        for kind, x in subset:
            if kind == "e":
                sign = 1 if self._G.heads[x] in self._inside else -1
                c[self._col_e[x]] += sign
                const += sign * self._edges_lo[x]
            else:
                c[self._col_t[x]] += 1 if x in self._sources else -1
        return c, const

    def interval(self, subset: Iterable[tuple[str, int]]) -> tuple[Fraction, Fraction]:
        if self.lp is None:
            raise Infeasible("component admits no feasible partial flow")
        c, const = self.functional(subset)
        try:
            hi, _ = self.lp.maximize(c)
            lo, _ = self.lp.minimize(c)
        except Unbounded:  # pragma: no cover - terminals only move bounded edge flow
            raise AssertionError("unbounded projection")
        return Fraction(lo + const, self.scale), Fraction(hi + const, self.scale)


def project_interval(N: ExtFlowNetwork, X: Iterable[int], subset: Iterable) -> tuple[Fraction, Fraction]:
    """Exact [min, max] of the net injection into ``X`` through ``subset``.

    ``subset`` holds items ``("e", edge id)`` or ``("t", terminal)``; bare
    ints are read as terminals.
    """
    items = [x if isinstance(x, tuple) else ("t", x) for x in subset]
    return ComponentLP(N, X).interval(items)
