"""Edge- and vertex-outerplanarity of a plane graph by layer peeling.

Deleting edges only merges faces, so the region that is unbounded after
``i`` peeling rounds is a union of faces of the original drawing.  The
edge layering is therefore read off a breadth-first search of the dual
graph from the outer face: an edge belongs to layer ``min(dist(left),
dist(right))``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph_core import PlaneDiGraph

__all__ = ["Layering", "edge_outerplanarity", "vertex_outerplanarity", "face_distances"]


@dataclass(frozen=True)
class Layering:
    """Peeling partition of the edges; ``blocks[i]`` holds the edges of layer i."""

    blocks: tuple[tuple[int, ...], ...]
    layer_of: tuple[int, ...]
    face_distance: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.blocks)

    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]


def face_distances(G: PlaneDiGraph) -> list[int]:
    """Dual BFS distance of every face from the outer face."""
    F = G.faces
    nf = len(F)
    adj: list[list[int]] = [[] for _ in range(nf)]
    for e in range(G.m):
        a, b = F.face_of[2 * e], F.face_of[2 * e + 1]
        if a != b:
            adj[a].append(b)
            adj[b].append(a)
    dist = [-1] * nf
    dist[F.outer] = 0
    q = deque([F.outer])
    while q:
        f = q.popleft()
        for g in adj[f]:
            if dist[g] < 0:
                dist[g] = dist[f] + 1
                q.append(g)
    return dist


def edge_outerplanarity(G: PlaneDiGraph) -> Layering:
    if G.m == 0:
        return Layering((), (), ())
    dist = face_distances(G)
    fo = G.faces.face_of
    layer = [min(dist[fo[2 * e]], dist[fo[2 * e + 1]]) for e in range(G.m)]
    k = max(layer) + 1
    blocks: list[list[int]] = [[] for _ in range(k)]
    for e, i in enumerate(layer):
        blocks[i].append(e)
    return Layering(tuple(tuple(b) for b in blocks), tuple(layer), tuple(dist))


def vertex_outerplanarity(G: PlaneDiGraph) -> int:
    """Number of rounds of removing every vertex on the outer face."""
    if G.n == 0:
        return 0
    if G.m == 0:
        return 1
    F = G.faces
    parent = list(range(len(F)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    alive = [True] * G.n
    edge_alive = [True] * G.m
    left = G.n
    rounds = 0
    while left:
        rounds += 1
        root = find(F.outer)
        doomed = []
        for v in range(G.n):
            if not alive[v]:
                continue
            rot = G.rotation[v]
            if not rot:
                doomed.append(v)
                continue
            for e in rot:
                d = 2 * e if G.tails[e] == v else 2 * e + 1
                if find(F.face_of[d]) == root:
                    doomed.append(v)
                    break
        if not doomed:  # pragma: no cover - the outer region always touches a survivor
            raise AssertionError("peeling stalled")
        for v in doomed:
            alive[v] = False
            left -= 1
            for e in G.rotation[v]:
                if edge_alive[e]:
                    edge_alive[e] = False
                    a, b = find(F.face_of[2 * e]), find(F.face_of[2 * e + 1])
                    parent[a] = b
    return rounds
