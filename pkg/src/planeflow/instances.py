"""Small named plane graphs built from straight-line drawings."""

from __future__ import annotations

import math
from typing import Mapping, Sequence

from .graph_core import PlaneDiGraph, _trace, build_plane_graph

__all__ = [
    "from_drawing",
    "four_regular_example",
    "plane_k4",
    "triangular_prism",
    "directed_cycle",
    "diamond",
]


def from_drawing(
    points: Sequence[tuple[float, float]],
    edges: Sequence[tuple[int, int]],
    tangents: Mapping[tuple[int, int], float] | None = None,
) -> PlaneDiGraph:
    """Plane graph from coordinates.

    ``tangents[(v, e)]`` overrides the direction (degrees) in which edge ``e``
    leaves ``v``; curved edges need it.  The outer face is the traced face of
    smallest signed area.
    """
    tangents = tangents or {}
    n = len(points)
    inc: list[list[tuple[float, int]]] = [[] for _ in range(n)]
    for e, (a, b) in enumerate(edges):
        for v, w in ((a, b), (b, a)):
            ang = tangents.get((v, e))
            if ang is None:
                ang = math.degrees(math.atan2(points[w][1] - points[v][1], points[w][0] - points[v][0]))
            inc[v].append((ang % 360.0, e))
    rotation = [[e for _, e in sorted(lst, key=lambda p: -p[0])] for lst in inc]
    tails = [a for a, _ in edges]
    heads = [b for _, b in edges]
    faces, _ = _trace(tails, heads, rotation)

    def area(face) -> float:
        s = 0.0
        for d in face:
            e = d >> 1
            a, b = (tails[e], heads[e]) if d % 2 == 0 else (heads[e], tails[e])
            s += points[a][0] * points[b][1] - points[b][0] * points[a][1]
        return s / 2

    outer = min(faces, key=area)[0] if faces else None
    return build_plane_graph(n, edges, rotation, outer)


_FOUR_REG_POINTS = {
    "B": (6, 0), "D": (12, 6), "F": (6, 12), "H": (0, 6),
    "I": (3, 3), "J": (6, 3), "K": (9, 3), "L": (9, 6),
    "M": (9, 9), "N": (6, 9), "O": (3, 9), "P": (3, 6),
}
# (u, v, angle leaving u, angle leaving v) for the four bent outer edges
_FOUR_REG_CURVES = [("B", "D", 0, 270), ("D", "F", 90, 0), ("F", "H", 180, 90), ("H", "B", 270, 180)]
_FOUR_REG_STRAIGHT = [
    "BK", "DM", "FO", "HI", "IJ", "IB", "JK", "JL", "KD", "KL",
    "LM", "LN", "MF", "MN", "NO", "NP", "OH", "OP", "PI", "PJ",
]


def four_regular_example() -> PlaneDiGraph:
    """The four-regular plane graph with V-outerplanarity 2 and E-outerplanarity 4.

    Vertices are numbered in the order B, D, F, H, I, J, K, L, M, N, O, P;
    each drawn edge is oriented from its first letter to its second.
    """
    names = list(_FOUR_REG_POINTS)
    idx = {c: i for i, c in enumerate(names)}
    points = [_FOUR_REG_POINTS[c] for c in names]
    edges: list[tuple[int, int]] = []
    tangents: dict[tuple[int, int], float] = {}
    for a, b, ta, tb in _FOUR_REG_CURVES:
        e = len(edges)
        edges.append((idx[a], idx[b]))
        tangents[(idx[a], e)] = ta
        tangents[(idx[b], e)] = tb
    for a, b in _FOUR_REG_STRAIGHT:
        edges.append((idx[a], idx[b]))
    return from_drawing(points, edges, tangents)


def plane_k4() -> PlaneDiGraph:
    """K4 drawn as a triangle with one interior vertex (vertex 3)."""
    points = [(0.0, 0.0), (4.0, 0.0), (2.0, 4.0), (2.0, 1.5)]
    edges = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]
    return from_drawing(points, edges)


def triangular_prism() -> PlaneDiGraph:
    """Two nested triangles joined by three spokes (outer 0-2, inner 3-5)."""
    points = [(0.0, 0.0), (6.0, 0.0), (3.0, 6.0), (2.0, 1.5), (4.0, 1.5), (3.0, 3.5)]
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    return from_drawing(points, edges)


def directed_cycle(length: int) -> PlaneDiGraph:
    points = [
        (math.cos(2 * math.pi * i / length), math.sin(2 * math.pi * i / length))
        for i in range(length)
    ]
    edges = [(i, (i + 1) % length) for i in range(length)]
    return from_drawing(points, edges)


def diamond() -> PlaneDiGraph:
    """s=0, a=1, b=2, t=3 with edges s->a, s->b, a->t, b->t, a->b."""
    points = [(0.0, 0.0), (2.0, 2.0), (2.0, -2.0), (4.0, 0.0)]
    edges = [(0, 1), (0, 2), (1, 3), (2, 3), (1, 2)]
    return from_drawing(points, edges)
