"""Cubic, two-edge-cycle-free rewrite of a plane flow network.

Expanding a vertex of degree p replaces it by a directed p-cycle whose
vertices each take one of the original incident edges, in rotation order.
Stage 1 expands every vertex of degree at least 4; stage 2 expands both
endpoints of every remaining two-edge cycle.  Original edge ids survive
unchanged, fresh edges are numbered after them, and the expanded vertex
keeps its id as the first cycle vertex, which is also where a relocated
terminal lands.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeTooSmall
from .graph_core import EmbeddingEditor, PlaneDiGraph
from .network import ExtFlowNetwork, FlowNetwork

__all__ = ["ExpansionTrace", "TransformedNetwork", "expand_vertex", "to_cubic", "transform_network"]


@dataclass(frozen=True)
class ExpansionTrace:
    vertex: int
    cycle: tuple[int, ...]
    cycle_edges: tuple[int, ...]
    attachment: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class TransformedNetwork:
    graph: PlaneDiGraph
    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]
    sources: tuple[int, ...]
    sinks: tuple[int, ...]
    big: Fraction
    original_edges: int
    traces: tuple[ExpansionTrace, ...]

    def network(self) -> ExtFlowNetwork:
        return ExtFlowNetwork(self.graph, self.upper, self.lower, self.sources, self.sinks)

    @property
    def s(self) -> int:
        return self.sources[0]

    @property
    def t(self) -> int:
        return self.sinks[0]


def _expand(ed: EmbeddingEditor, v: int) -> ExpansionTrace:
    rot = list(ed.rot[v])
    p = len(rot)
    if p < 3:
        raise DegreeTooSmall(f"vertex {v} has degree {p} < 3")
    cycle = [v] + [ed.add_vertex() for _ in range(p - 1)]
    for e, vi in zip(rot, cycle):
        if ed.tails[e] == v:
            ed.tails[e] = vi
        else:
            ed.heads[e] = vi
    fresh = [ed.add_edge(cycle[i], cycle[(i + 1) % p]) for i in range(p)]
    for i in range(p):
        ed.rot[cycle[i]] = [fresh[i - 1], rot[i], fresh[i]]
    return ExpansionTrace(v, tuple(cycle), tuple(fresh), tuple(zip(rot, cycle)))


def expand_vertex(G: PlaneDiGraph, v: int) -> tuple[PlaneDiGraph, ExpansionTrace]:
    ed = EmbeddingEditor(G)
    trace = _expand(ed, v)
    H, _, _ = ed.freeze()
    return H, trace


def to_cubic(G: PlaneDiGraph, validate: bool = True) -> tuple[PlaneDiGraph, list[ExpansionTrace]]:
    ed = EmbeddingEditor(G)
    traces = []
    for v in range(G.n):
        if G.degree(v) >= 4:
            traces.append(_expand(ed, v))
    # stage-1 cycles never create a two-edge cycle, so the pairs left are original ones
    pairs: set[tuple[int, int]] = {(ed.tails[e], ed.heads[e]) for e in range(len(ed.tails))}
    ends = sorted({v for (a, b) in pairs if (b, a) in pairs for v in (a, b)})
    for v in ends:
        traces.append(_expand(ed, v))
    H, _, _ = ed.freeze(validate=validate)
    return H, traces


def transform_network(N: FlowNetwork | ExtFlowNetwork, validate: bool = True) -> TransformedNetwork:
    if isinstance(N, FlowNetwork):
        N = N.as_extended()
    H, traces = to_cubic(N.G, validate=validate)
    m = N.G.m
    big = sum(N.upper, Fraction(0)) + 1
    fresh = H.m - m
    return TransformedNetwork(
        graph=H,
        upper=N.upper + (big,) * fresh,
        lower=N.lower + (Fraction(0),) * fresh,
        sources=N.sources,
        sinks=N.sinks,
        big=big,
        original_edges=m,
        traces=tuple(traces),
    )
