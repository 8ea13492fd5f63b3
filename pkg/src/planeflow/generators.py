"""Seeded instance families with a known layer structure.

All drawings are concentric rings joined by radial spokes, so rotations are
written down directly: at a ring vertex the clockwise order is inward
spoke, counter-clockwise ring neighbour, outward spoke, clockwise ring
neighbour.  Capacities are random rationals, edge directions are random
and ``t`` is drawn among the vertices reachable from ``s`` when possible.
"""

from __future__ import annotations

import random
from collections import deque
from fractions import Fraction

from .graph_core import EmbeddingEditor, PlaneDiGraph, build_plane_graph
from .network import FlowNetwork
from .outerplanarity import face_distances
from .transform import to_cubic

__all__ = [
    "FAMILIES",
    "nested_prisms",
    "nested_cycles",
    "random_cubic_plane",
    "generate_instance",
    "random_capacity",
    "random_network",
    "subdivide_edges",
    "glue",
    "degree2_terminal",
]


def random_capacity(rng: random.Random, zero_prob: float = 0.05) -> Fraction:
    if rng.random() < zero_prob:
        return Fraction(0)
    return Fraction(rng.randint(1, 24), rng.choice((1, 1, 2, 3, 4)))


class _RingBuilder:
    def __init__(self, rng: random.Random | None) -> None:
        self.rng = rng
        self.edges: list[tuple[int, int]] = []
        self.slots: list[dict[str, int]] = []

    def ring(self, size: int) -> list[int]:
        first = len(self.slots)
        vs = list(range(first, first + size))
        for _ in vs:
            self.slots.append({})
        for j in range(size):
            a, b = vs[j], vs[(j + 1) % size]  # b is counter-clockwise of a
            e = self._edge(a, b)
            self.slots[a]["ccw"] = e
            self.slots[b]["cw"] = e
        return vs

    def spoke(self, outer: int, inner: int) -> None:
        e = self._edge(outer, inner)
        self.slots[outer]["in"] = e
        self.slots[inner]["out"] = e

    def _edge(self, a: int, b: int) -> int:
        if self.rng is not None and self.rng.random() < 0.5:
            a, b = b, a
        self.edges.append((a, b))
        return len(self.edges) - 1

    def build(self, outer_ring: list[int]) -> PlaneDiGraph:
        rotation = [[s[k] for k in ("in", "ccw", "out", "cw") if k in s] for s in self.slots]
        # walking the outer ring clockwise keeps the unbounded face on the left
        e = self.slots[outer_ring[1]]["cw"]
        side = 0 if self.edges[e][0] == outer_ring[1] else 1
        return build_plane_graph(len(self.slots), self.edges, rotation, 2 * e + side)


def nested_prisms(k: int, ell: int, rng: random.Random | None = None) -> PlaneDiGraph:
    """``k + 1`` cubic rings of sizes ell, 2ell, ..., 2ell, ell; ``k = 1`` is the prism.

    Middle rings alternate spokes outward and inward, so every vertex has
    degree three; edge-outerplanarity is ``k + 1``.
    """
    if k < 1 or ell < 3:
        raise ValueError("need k >= 1 and ell >= 3")
    rb = _RingBuilder(rng)
    if k == 1:
        a, b = rb.ring(ell), rb.ring(ell)
        for j in range(ell):
            rb.spoke(a[j], b[j])
        return rb.build(a)
    rings = [rb.ring(ell)] + [rb.ring(2 * ell) for _ in range(k - 1)] + [rb.ring(ell)]
    for j in range(ell):
        rb.spoke(rings[0][j], rings[1][2 * j])
    for i in range(1, k - 1):
        inward = i % 2  # ring i takes spokes from outside on the other parity
        for j in range(ell):
            rb.spoke(rings[i][2 * j + inward], rings[i + 1][2 * j + inward])
    q = (k - 1) % 2
    for j in range(ell):
        rb.spoke(rings[k - 1][2 * j + q], rings[k][j])
    return rb.build(rings[0])


def nested_cycles(k: int, ell: int, rng: random.Random | None = None) -> PlaneDiGraph:
    """``k + 1`` rings of size ``ell`` with every vertex joined to the next ring.

    Middle-ring vertices have degree four; the result is passed through the
    cubic expansion, which keeps the edge-outerplanarity at ``k + 1``.
    """
    if k < 1 or ell < 3:
        raise ValueError("need k >= 1 and ell >= 3")
    rb = _RingBuilder(rng)
    rings = [rb.ring(ell) for _ in range(k + 1)]
    for i in range(k):
        for j in range(ell):
            rb.spoke(rings[i][j], rings[i + 1][j])
    G = rb.build(rings[0])
    H, _ = to_cubic(G)
    if rng is not None:
        H = _reorient(H, rng)
    return H


def _reorient(G: PlaneDiGraph, rng: random.Random) -> PlaneDiGraph:
    edges = []
    outer = G.outer_dart
    for e in range(G.m):
        a, b = G.tails[e], G.heads[e]
        if rng.random() < 0.5:
            edges.append((b, a))
            if outer is not None and outer >> 1 == e:
                outer ^= 1
        else:
            edges.append((a, b))
    return build_plane_graph(G.n, edges, [list(r) for r in G.rotation], outer)


def random_cubic_plane(k: int, ell: int, rng: random.Random, rungs: int | None = None) -> PlaneDiGraph:
    """Nested prisms with extra rungs drawn across random inner faces.

    Each rung starts on an edge shared with a face one step closer to the
    outer face.  Both halves of the split face keep a piece of that edge, so
    no face distance changes; rungs avoid the deepest faces, so the
    edge-outerplanarity stays ``k + 1``.
    """
    G = nested_prisms(k, ell, rng)
    if rungs is None:
        rungs = max(1, G.n // 8)
    dist = face_distances(G)
    ed = EmbeddingEditor(G)
    F = G.faces
    # a rung lies between two faces at its own depth, so the deepest faces are off limits
    deepest = max(dist)
    candidates = [f for f in range(len(F)) if 0 < dist[f] < deepest]
    for f in rng.sample(candidates, min(rungs, len(candidates))):
        darts = F.faces[f]
        anchors = [i for i, d in enumerate(darts) if dist[F.face_of[d ^ 1]] == dist[f] - 1]
        if not anchors or len(darts) < 2:
            continue
        i = rng.choice(anchors)
        j = rng.choice([q for q in range(len(darts)) if q != i])
        ends = []
        for d in (darts[i], darts[j]):
            e = d >> 1
            x, e2 = ed.subdivide(e)
            # the face walk arrives at x along one half and leaves along the other
            first, second = (e, e2) if d % 2 == 0 else (e2, e)
            ends.append((x, first, second))
        (x1, a1, b1), (x2, a2, b2) = ends
        r = ed.add_edge(x1, x2) if rng.random() < 0.5 else ed.add_edge(x2, x1)
        ed.rot[x1] = [a1, r, b1]
        ed.rot[x2] = [a2, r, b2]
    H, _, _ = ed.freeze()
    return H


FAMILIES = ("nested-prisms", "nested-cycles", "random-cubic-plane")


def _pick_terminals(G: PlaneDiGraph, rng: random.Random) -> tuple[int, int]:
    s = rng.randrange(G.n)
    seen = {s}
    q = deque([s])
    while q:
        v = q.popleft()
        for e in G.out_edges(v):
            w = G.heads[e]
            if w not in seen:
                seen.add(w)
                q.append(w)
    pool = sorted(seen - {s})
    if pool and rng.random() < 0.9:
        return s, rng.choice(pool)
    t = rng.randrange(G.n - 1)
    return s, t + (t >= s)


def random_network(G: PlaneDiGraph, rng: random.Random) -> FlowNetwork:
    caps = [random_capacity(rng) for _ in range(G.m)]
    s, t = _pick_terminals(G, rng)
    return FlowNetwork(G, tuple(caps), s, t)


def generate_instance(family: str, k: int, ell: int, seed: int) -> FlowNetwork:
    """Deterministic network of the given family; same arguments, same instance."""
    rng = random.Random(f"{family}/{k}/{ell}/{seed}")
    if family == "nested-prisms":
        G = nested_prisms(k, ell, rng)
    elif family == "nested-cycles":
        G = nested_cycles(k, ell, rng)
    elif family == "random-cubic-plane":
        G = random_cubic_plane(k, ell, rng)
    else:
        raise ValueError(f"unknown family {family!r}; pick one of {', '.join(FAMILIES)}")
    return random_network(G, rng)


# --------------------------------------------------------------------------
# perturbations that exercise the preprocessing step


def subdivide_edges(N: FlowNetwork, count: int, rng: random.Random, chain: int = 1) -> FlowNetwork:
    """Replace ``count`` random edges by directed chains of ``chain + 1`` edges."""
    ed = EmbeddingEditor(N.G)
    cap = list(N.capacity)
    for e in rng.sample(range(N.G.m), min(count, N.G.m)):
        cur = e
        for _ in range(chain):
            _, e2 = ed.subdivide(cur)
            cap.append(random_capacity(rng, 0.0))
            cur = e2
    G, vmap, emap = ed.freeze()
    c = [Fraction(0)] * G.m
    for old, new in enumerate(emap):
        c[new] = cap[old]
    return FlowNetwork(G, tuple(c), vmap[N.s], vmap[N.t])


def glue(N1: FlowNetwork, N2: FlowNetwork, bridge: Fraction | None = None) -> FlowNetwork:
    """Chain two networks: ``t1`` and ``s2`` are identified, or joined by a bridge.

    ``N2`` is redrawn with the face left of the first dart at ``s2`` as its
    outer face and placed inside a face of ``N1`` at ``t1``; the result runs
    from ``s1`` to ``t2``.
    """
    G1, G2 = N1.G, N2.G
    shared = bridge is None

    def vid(v: int) -> int:
        if not shared:
            return G1.n + v
        return N1.t if v == N2.s else G1.n + v - (v > N2.s)

    n = G1.n + G2.n - shared
    edges = list(zip(G1.tails, G1.heads)) + [(vid(a), vid(b)) for a, b in zip(G2.tails, G2.heads)]
    rot = [list(r) for r in G1.rotation] + [[] for _ in range(n - G1.n)]
    for v in range(G2.n):
        # splicing a whole rotation in keeps every other corner intact
        rot[vid(v)] += [G1.m + e for e in G2.rotation[v]]
    caps = list(N1.capacity) + list(N2.capacity)
    if not shared:
        b = len(edges)
        edges.append((N1.t, vid(N2.s)))
        rot[N1.t].append(b)
        rot[vid(N2.s)].insert(0, b)
        caps.append(Fraction(bridge))
    G = build_plane_graph(n, edges, rot, G1.outer_dart)
    return FlowNetwork(G, tuple(caps), N1.s, vid(N2.t))


def degree2_terminal(N: FlowNetwork, rng: random.Random, which: str = "s") -> FlowNetwork:
    """Move a terminal onto a fresh vertex subdividing one of its edges."""
    x = N.s if which == "s" else N.t
    G = N.G
    cands = G.out_edges(x) if which == "s" else G.in_edges(x)
    if not cands:
        return N
    e = rng.choice(sorted(cands))
    ed = EmbeddingEditor(G)
    mid, e2 = ed.subdivide(e)
    cap = list(N.capacity) + [N.capacity[e]]
    H, vmap, emap = ed.freeze()
    c = [Fraction(0)] * H.m
    for old, new in enumerate(emap):
        c[new] = cap[old]
    s, t = vmap[N.s], vmap[N.t]
    if which == "s":
        s = vmap[mid]
    else:
        t = vmap[mid]
    return FlowNetwork(H, tuple(c), s, t)
