"""Directed plane graphs given by a rotation system.

A *dart* is a directed traversal of an edge: ``2*e`` walks edge ``e`` from
tail to head, ``2*e + 1`` from head to tail.  Rotations list the incident
edge ids of each vertex in clockwise order.  Faces are traced with the
next-edge-after-reverse rule: after arriving at ``w`` along edge ``e`` we
leave along the clockwise successor of ``e`` in the rotation of ``w``.  With
clockwise rotations this keeps the traced face on the *left* of every dart,
so the outer face is named by a dart whose left side is unbounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    Disconnected,
    DuplicateDirectedEdge,
    EmbeddingNotPlanar,
    RotationMismatch,
    SelfLoop,
)

__all__ = [
    "PlaneDiGraph",
    "UndirectedView",
    "FaceSet",
    "EmbeddingEditor",
    "build_plane_graph",
    "trace_faces",
    "undirect",
    "dart",
    "dart_edge",
]


def dart(e: int, reverse: bool = False) -> int:
    return 2 * e + (1 if reverse else 0)


def dart_edge(d: int) -> int:
    return d >> 1


def _positions(m: int, tails, heads, rotation) -> tuple[list[int], list[int]]:
    pos_t = [-1] * m
    pos_h = [-1] * m
    for v, rot in enumerate(rotation):
        for i, e in enumerate(rot):
            if tails[e] == v:
                pos_t[e] = i
            else:
                pos_h[e] = i
    return pos_t, pos_h


def _trace(tails, heads, rotation) -> tuple[list[tuple[int, ...]], list[int]]:
    """Trace all faces of a rotation system; returns (faces, face_of_dart)."""
    m = len(tails)
    pos_t, pos_h = _positions(m, tails, heads, rotation)
    face_of = [-1] * (2 * m)
    faces: list[tuple[int, ...]] = []
    for start in range(2 * m):
        if face_of[start] != -1:
            continue
        fid = len(faces)
        walk = []
        d = start
        while face_of[d] == -1:
            face_of[d] = fid
            walk.append(d)
            e = d >> 1
            if d & 1:
                w, i = tails[e], pos_t[e]
            else:
                w, i = heads[e], pos_h[e]
            rot = rotation[w]
            nxt = rot[(i + 1) % len(rot)]
            d = 2 * nxt + (0 if tails[nxt] == w else 1)
        if d != start:  # pragma: no cover - a permutation always closes
            raise EmbeddingNotPlanar("face walk did not close")
        faces.append(tuple(walk))
    return faces, face_of


def _components(n: int, tails, heads) -> list[int]:
    comp = [-1] * n
    adj: list[list[int]] = [[] for _ in range(n)]
    for t, h in zip(tails, heads):
        adj[t].append(h)
        adj[h].append(t)
    c = 0
    for s in range(n):
        if comp[s] != -1:
            continue
        comp[s] = c
        stack = [s]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if comp[w] == -1:
                    comp[w] = c
                    stack.append(w)
        c += 1
    return comp


@dataclass(frozen=True)
class FaceSet:
    faces: tuple[tuple[int, ...], ...]
    face_of: tuple[int, ...]
    outer: int | None

    def __len__(self) -> int:
        return len(self.faces)

    def edge_sides(self, e: int) -> tuple[int, int]:
        """(face left of the forward dart, face left of the reverse dart)."""
        return self.face_of[2 * e], self.face_of[2 * e + 1]


@dataclass(frozen=True)
class PlaneDiGraph:
    """Validated directed plane graph; build it with :func:`build_plane_graph`."""

    n: int
    tails: tuple[int, ...]
    heads: tuple[int, ...]
    rotation: tuple[tuple[int, ...], ...]
    outer_dart: int | None = None

    @property
    def m(self) -> int:
        return len(self.tails)

    def edges(self) -> Iterable[tuple[int, int, int]]:
        return zip(range(self.m), self.tails, self.heads)

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def other(self, e: int, v: int) -> int:
        t = self.tails[e]
        return self.heads[e] if t == v else t

    def out_edges(self, v: int) -> list[int]:
        return [e for e in self.rotation[v] if self.tails[e] == v]

    def in_edges(self, v: int) -> list[int]:
        return [e for e in self.rotation[v] if self.heads[e] == v]

    @cached_property
    def faces(self) -> FaceSet:
        return trace_faces(self)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {(t, h): e for e, t, h in self.edges()}

    def two_edge_cycles(self) -> list[tuple[int, int]]:
        idx = self.edge_index
        return sorted(
            (e, idx[(h, t)]) for e, t, h in self.edges() if (h, t) in idx and e < idx[(h, t)]
        )

    def is_cubic(self) -> bool:
        return all(len(r) == 3 for r in self.rotation)


@dataclass(frozen=True)
class UndirectedView:
    n: int
    pairs: tuple[tuple[int, int], ...]
    directed: tuple[tuple[int, ...], ...]
    edge_of: tuple[int, ...]
    rotation: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def m(self) -> int:
        return len(self.pairs)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.pairs:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def face_count(self) -> int:
        tails = [a for a, _ in self.pairs]
        heads = [b for _, b in self.pairs]
        faces, _ = _trace(tails, heads, self.rotation)
        return len(faces)


def undirect(G: PlaneDiGraph) -> UndirectedView:
    """Collapse every two-edge cycle into one undirected edge."""
    key_to_id: dict[tuple[int, int], int] = {}
    pairs: list[tuple[int, int]] = []
    directed: list[list[int]] = []
    edge_of = [0] * G.m
    for e, t, h in G.edges():
        key = (t, h) if t < h else (h, t)
        u = key_to_id.get(key)
        if u is None:
            u = key_to_id[key] = len(pairs)
            pairs.append(key)
            directed.append([])
        directed[u].append(e)
        edge_of[e] = u
    rotation = []
    for rot in G.rotation:
        seen: list[int] = []
        for e in rot:
            u = edge_of[e]
            if u not in seen:
                seen.append(u)
        rotation.append(tuple(seen))
    return UndirectedView(
        G.n, tuple(pairs), tuple(tuple(d) for d in directed), tuple(edge_of), tuple(rotation)
    )


def trace_faces(G: PlaneDiGraph) -> FaceSet:
    faces, face_of = _trace(G.tails, G.heads, G.rotation)
    outer = face_of[G.outer_dart] if G.outer_dart is not None and G.m else None
    return FaceSet(tuple(faces), tuple(face_of), outer)


def build_plane_graph(
    n: int,
    edges: Sequence[tuple[int, int]],
    rotation: Sequence[Sequence[int]],
    outer_dart: int | None = None,
) -> PlaneDiGraph:
    """Validate raw data and return a :class:`PlaneDiGraph`.

    ``edges[e] = (tail, head)``; ``rotation[v]`` lists the incident edge ids
    of ``v`` clockwise.  ``outer_dart`` names the unbounded face (the face on
    its left); it defaults to dart 0 when the graph has edges.
    """
    if n < 0:
        raise ValueError("negative vertex count")
    tails = tuple(int(t) for t, _ in edges)
    heads = tuple(int(h) for _, h in edges)
    m = len(tails)
    seen: set[tuple[int, int]] = set()
    for e, (t, h) in enumerate(zip(tails, heads)):
        if not (0 <= t < n and 0 <= h < n):
            raise RotationMismatch(f"edge {e} has an endpoint outside 0..{n - 1}")
        if t == h:
            raise SelfLoop(f"edge {e} is a self-loop at vertex {t}")
        if (t, h) in seen:
            raise DuplicateDirectedEdge(f"edge {e} duplicates ({t}, {h})")
        seen.add((t, h))
    if len(rotation) != n:
        raise RotationMismatch(f"expected {n} rotation lists, got {len(rotation)}")
    incident: list[list[int]] = [[] for _ in range(n)]
    for e in range(m):
        incident[tails[e]].append(e)
        incident[heads[e]].append(e)
    rot = tuple(tuple(int(e) for e in r) for r in rotation)
    for v in range(n):
        if sorted(rot[v]) != incident[v]:
            raise RotationMismatch(f"rotation of vertex {v} does not list exactly its incident edges")
    if m and outer_dart is None:
        outer_dart = 0
    if outer_dart is not None and not (0 <= outer_dart < 2 * m):
        raise RotationMismatch(f"outer dart {outer_dart} out of range")
    G = PlaneDiGraph(n, tails, heads, rot, outer_dart if m else None)

    comp = _components(n, tails, heads)
    touched = {comp[v] for v in range(n) if rot[v]}
    if len(touched) > 1:
        raise Disconnected("the edges of a plane graph must form one connected component")
    if m:
        nv = sum(1 for v in range(n) if rot[v])
        f = len(G.faces)
        if nv - m + f != 2:
            raise EmbeddingNotPlanar(f"Euler check failed: {nv} - {m} + {f} != 2")
        U = undirect(G)
        fu = U.face_count()
        if nv - U.m + fu != 2:
            raise EmbeddingNotPlanar(
                f"Euler check on the undirected view failed: {nv} - {U.m} + {fu} != 2"
            )
    return G


class EmbeddingEditor:
    """Mutable rotation system used by the local rewrites.

    Edge and vertex ids are stable while editing; :meth:`freeze` renumbers
    the survivors densely (in increasing old id) and returns the id maps.
    """

    def __init__(self, G: PlaneDiGraph) -> None:
        self.tails = list(G.tails)
        self.heads = list(G.heads)
        self.edge_alive = [True] * G.m
        self.rot = [list(r) for r in G.rotation]
        self.vertex_alive = [True] * G.n
        self.outer = G.outer_dart

    @property
    def n(self) -> int:
        return len(self.rot)

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def other(self, e: int, v: int) -> int:
        return self.heads[e] if self.tails[e] == v else self.tails[e]

    def add_vertex(self) -> int:
        self.rot.append([])
        self.vertex_alive.append(True)
        return len(self.rot) - 1

    def add_edge(self, t: int, h: int) -> int:
        """Add an edge without touching rotations; callers place it."""
        self.tails.append(t)
        self.heads.append(h)
        self.edge_alive.append(True)
        return len(self.tails) - 1

    def insert_after(self, v: int, anchor: int | None, e: int) -> None:
        r = self.rot[v]
        if anchor is None:
            r.append(e)
        else:
            r.insert(r.index(anchor) + 1, e)

    def replace_in_rotation(self, v: int, old: int, new: int) -> None:
        r = self.rot[v]
        r[r.index(old)] = new

    def next_dart(self, d: int) -> int:
        e = d >> 1
        w = self.tails[e] if d & 1 else self.heads[e]
        r = self.rot[w]
        nxt = r[(r.index(e) + 1) % len(r)]
        return 2 * nxt + (0 if self.tails[nxt] == w else 1)

    def _move_outer_off(self, doomed: set[int]) -> None:
        if self.outer is None or (self.outer >> 1) not in doomed:
            return
        d = self.next_dart(self.outer)
        start = self.outer
        while (d >> 1) in doomed:
            if d == start:
                self.outer = None
                return
            d = self.next_dart(d)
        self.outer = d

    def delete_edges(self, ids: Iterable[int]) -> None:
        doomed = set(ids)
        self._move_outer_off(doomed)
        for e in doomed:
            for v in (self.tails[e], self.heads[e]):
                self.rot[v].remove(e)
            self.edge_alive[e] = False

    def delete_vertex(self, v: int) -> None:
        self.delete_edges(list(self.rot[v]))
        self.vertex_alive[v] = False

    def subdivide(self, e: int) -> tuple[int, int]:
        """Split ``e = (a, b)`` into ``e = (a, x)`` and ``e2 = (x, b)``."""
        b = self.heads[e]
        x = self.add_vertex()
        e2 = self.add_edge(x, b)
        self.heads[e] = x
        self.replace_in_rotation(b, e, e2)
        self.rot[x] = [e, e2]
        return x, e2

    def freeze(self, validate: bool = True) -> tuple[PlaneDiGraph, list[int], list[int]]:
        vmap = [-1] * len(self.rot)
        k = 0
        for v, alive in enumerate(self.vertex_alive):
            if alive:
                vmap[v] = k
                k += 1
        emap = [-1] * len(self.tails)
        edges = []
        for e, alive in enumerate(self.edge_alive):
            if alive:
                emap[e] = len(edges)
                edges.append((vmap[self.tails[e]], vmap[self.heads[e]]))
        rotation = [[emap[e] for e in self.rot[v]] for v in range(len(self.rot)) if vmap[v] >= 0]
        outer = None
        if self.outer is not None and edges:
            outer = 2 * emap[self.outer >> 1] + (self.outer & 1)
        if validate:
            G = build_plane_graph(k, edges, rotation, outer)
        else:
            G = PlaneDiGraph(
                k, tuple(t for t, _ in edges), tuple(h for _, h in edges),
                tuple(tuple(r) for r in rotation), outer,
            )
        return G, vmap, emap

