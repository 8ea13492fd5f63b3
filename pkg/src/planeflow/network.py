"""Flow network containers with exact rational capacities."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .graph_core import PlaneDiGraph

__all__ = ["FlowNetwork", "ExtFlowNetwork", "as_fraction", "common_scale"]


def as_fraction(x) -> Fraction:
    f = Fraction(x)
    if f < 0:
        raise ValueError(f"capacities must be nonnegative, got {f}")
    return f


def common_scale(values: Iterable[Fraction]) -> int:
    """Least common denominator; multiplying by it makes every value integral."""
    s = 1
    for v in values:
        s = lcm(s, v.denominator)
    return s


@dataclass(frozen=True)
class FlowNetwork:
    """(G, c, s, t) with ``capacity[e]`` a nonnegative Fraction."""

    G: PlaneDiGraph
    capacity: tuple[Fraction, ...]
    s: int
    t: int

    def __post_init__(self) -> None:
        if len(self.capacity) != self.G.m:
            raise ValueError("capacity must be total on the edges")
        if self.s == self.t:
            raise ValueError("source and sink must differ")
        if not (0 <= self.s < self.G.n and 0 <= self.t < self.G.n):
            raise ValueError("terminal out of range")

    @classmethod
    def create(cls, G: PlaneDiGraph, capacity: Sequence, s: int, t: int) -> "FlowNetwork":
        return cls(G, tuple(as_fraction(c) for c in capacity), s, t)

    def as_extended(self) -> "ExtFlowNetwork":
        return ExtFlowNetwork(
            self.G, self.capacity, tuple(Fraction(0) for _ in self.capacity), (self.s,), (self.t,)
        )


@dataclass(frozen=True)
class ExtFlowNetwork:
    """(G, upper, lower, S, T): bounded edges, several sources and sinks."""

    G: PlaneDiGraph
    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]
    sources: tuple[int, ...]
    sinks: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.upper) != self.G.m or len(self.lower) != self.G.m:
            raise ValueError("bounds must be total on the edges")
        for e, (lo, hi) in enumerate(zip(self.lower, self.upper)):
            if not (0 <= lo <= hi):
                raise ValueError(f"edge {e}: need 0 <= lower <= upper")
        if not self.sources or not self.sinks:
            raise ValueError("S and T must be nonempty")
        if set(self.sources) & set(self.sinks):
            raise ValueError("S and T must be disjoint")
        if len(set(self.sources)) != len(self.sources) or len(set(self.sinks)) != len(self.sinks):
            raise ValueError("repeated terminal")

    @classmethod
    def create(cls, G, upper, lower=None, sources=(), sinks=()) -> "ExtFlowNetwork":
        up = tuple(as_fraction(c) for c in upper)
        lo = tuple(as_fraction(c) for c in lower) if lower is not None else tuple(Fraction(0) for _ in up)
        return cls(G, up, lo, tuple(sorted(sources)), tuple(sorted(sinks)))

    @property
    def terminals(self) -> tuple[int, ...]:
        return tuple(sorted(self.sources + self.sinks))
