"""Random plane test graphs that the structured generators do not cover."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np
from scipy.spatial import Delaunay

from planeflow.instances import from_drawing
from planeflow.network import FlowNetwork
from planeflow.generators import random_capacity


def delaunay_graph(n: int, seed: int, doubled: float = 0.0, drop: float = 0.0):
    """Delaunay triangulation of random points, edges randomly oriented.

    A ``doubled`` fraction of edges gets an antiparallel twin (a two-edge
    cycle drawn as a thin digon); ``drop`` removes edges while every vertex
    keeps degree at least three.
    """
    rng = random.Random(seed)
    pts = np.array([(rng.random(), rng.random()) for _ in range(n)])
    tri = Delaunay(pts)
    und = set()
    for a, b, c in tri.simplices:
        for u, v in ((a, b), (b, c), (c, a)):
            und.add((min(u, v), max(u, v)))
    und = sorted((int(u), int(v)) for u, v in und)
    deg = [0] * n
    for u, v in und:
        deg[u] += 1
        deg[v] += 1
    kept = []
    for u, v in und:
        # dropping must keep degrees >= 3; hull edges stay so the drawing stays 2-connected
        if rng.random() < drop and deg[u] > 3 and deg[v] > 3:
            deg[u] -= 1
            deg[v] -= 1
            continue
        kept.append((u, v))
    edges, tangents = [], {}
    for u, v in kept:
        a, b = (u, v) if rng.random() < 0.5 else (v, u)
        if rng.random() < doubled:
            theta = math.degrees(math.atan2(pts[b][1] - pts[a][1], pts[b][0] - pts[a][0]))
            for sign, (x, y) in ((1, (a, b)), (-1, (b, a))):
                e = len(edges)
                edges.append((x, y))
                tangents[(a, e)] = theta + 1e-6 * sign
                tangents[(b, e)] = theta + 180 - 1e-6 * sign
        else:
            edges.append((a, b))
    return from_drawing([tuple(p) for p in pts], edges, tangents)


def delaunay_network(n: int, seed: int, doubled: float = 0.0, drop: float = 0.0) -> FlowNetwork:
    rng = random.Random(seed * 7919 + 1)
    G = delaunay_graph(n, seed, doubled, drop)
    caps = [random_capacity(rng) for _ in range(G.m)]
    s = rng.randrange(n)
    t = rng.randrange(n - 1)
    t += t >= s
    return FlowNetwork(G, tuple(caps), s, t)


def peel_layers(G) -> list[set[int]]:
    """Layer blocks by literal peeling: delete outer edges, re-trace faces, repeat.

    Independent of the dual-distance computation in the package.  A face of
    the remainder belongs to the unbounded region when it absorbed an old
    face that touched a deleted edge.
    """
    alive = set(range(G.m))
    outer_face = None
    blocks = []
    old_face_of = None
    deleted_faces = None
    while alive:
        faces, face_of = _trace_alive(G, alive)
        if outer_face is None:
            outer_face = face_of[G.outer_dart]
            outer = {outer_face}
        else:
            outer = {face_of[d] for d in face_of if old_face_of[d] in deleted_faces}
        K = {d >> 1 for f in outer for d in faces[f]}
        blocks.append(K)
        deleted_faces = {face_of[d] for e in K for d in (2 * e, 2 * e + 1)} | outer
        old_face_of = face_of
        alive -= K
    return blocks


def _trace_alive(G, alive):
    rot = {v: [e for e in G.rotation[v] if e in alive] for v in range(G.n)}
    pos = {}
    for v, r in rot.items():
        for i, e in enumerate(r):
            pos[(v, e)] = i

    def head(d):
        e = d >> 1
        return G.heads[e] if d % 2 == 0 else G.tails[e]

    def nxt(d):
        w = head(d)
        r = rot[w]
        e = r[(pos[(w, d >> 1)] + 1) % len(r)]
        if G.tails[e] == w and G.heads[e] != w:
            return 2 * e
        if G.heads[e] == w and G.tails[e] != w:
            return 2 * e + 1
        raise AssertionError("self-loop")

    face_of, faces = {}, []
    for e in sorted(alive):
        for d in (2 * e, 2 * e + 1):
            if d in face_of:
                continue
            f = len(faces)
            walk = []
            x = d
            while x not in face_of:
                face_of[x] = f
                walk.append(x)
                x = nxt(x)
            faces.append(walk)
    return faces, face_of


def peel_vertex_rounds(G) -> int:
    """Rounds of deleting every vertex on the outer face, by re-tracing faces."""
    alive_v = set(range(G.n))
    alive = set(range(G.m))
    rounds = 0
    merged = None  # faces of the previous round that joined the unbounded region
    old_face_of = None
    while alive_v:
        rounds += 1
        faces, face_of = _trace_alive(G, alive) if alive else ([], {})
        if old_face_of is None:
            outer = {face_of[G.outer_dart]} if alive else set()
        else:
            outer = {face_of[d] for d in face_of if old_face_of[d] in merged}
        doomed = {v for v in alive_v if not any(e in alive for e in G.rotation[v])}
        for f in outer:
            for d in faces[f]:
                e = d >> 1
                doomed.add(G.tails[e] if d % 2 == 0 else G.heads[e])
        gone = {e for e in alive if G.tails[e] in doomed or G.heads[e] in doomed}
        merged = outer | {face_of[d] for e in gone for d in (2 * e, 2 * e + 1)}
        old_face_of = face_of
        alive -= gone
        alive_v -= doomed
    return rounds


def cut_vertices_by_deletion(G) -> list[int]:
    """Vertices whose removal disconnects the undirected view, by plain search."""
    adj = [set() for _ in range(G.n)]
    for a, b in zip(G.tails, G.heads):
        adj[a].add(b)
        adj[b].add(a)

    def components(skip):
        seen, count = {skip}, 0
        for r in range(G.n):
            if r in seen:
                continue
            count += 1
            stack = [r]
            seen.add(r)
            while stack:
                v = stack.pop()
                for w in adj[v] - seen:
                    seen.add(w)
                    stack.append(w)
        return count

    return [v for v in range(G.n) if components(v) > 1]


# --------------------------------------------------------------------------
# small multi-terminal networks for checking typings against LP oracles


def lp_flow(N, objective, g_pinned=None):
    """A vertex of the feasible-flow polytope maximizing ``objective`` (scipy, floats)."""
    from scipy.optimize import linprog

    G = N.G
    terms = list(N.terminals)
    ne, nt = G.m, len(terms)
    A = np.zeros((G.n, ne + nt))
    for e in range(G.m):
        A[G.heads[e], e] += 1
        A[G.tails[e], e] -= 1
    for i, v in enumerate(terms):
        A[v, ne + i] = 1 if v in N.sources else -1
    bounds = [(float(N.lower[e]), float(N.upper[e])) for e in range(G.m)]
    bounds += [(0, None)] * nt
    res = linprog(-np.asarray(objective, float), A_eq=A, b_eq=np.zeros(G.n), bounds=bounds, method="highs")
    if res.status != 0:
        return None
    return res.x[:ne]


def rational_flow(N, x, denom=1000):
    """Snap an LP float vertex to nearby rationals; None if that breaks feasibility."""
    from planeflow.oracle import verify_flow

    f = [Fraction(v).limit_denominator(denom) for v in x]
    try:
        verify_flow(N, f)
    except AssertionError:
        return None
    return f


def small_networks(count: int, max_hat: int = 14, seed: int = 0):
    """Multi-terminal networks, some with lower bounds, small after the transform."""
    from planeflow.generators import nested_prisms, random_cubic_plane
    from planeflow.instances import diamond, plane_k4, triangular_prism
    from planeflow.network import ExtFlowNetwork
    from planeflow.preprocess import prepare_extended
    from planeflow.transform import transform_network
    from planeflow.errors import PlaneFlowError

    rng = random.Random(seed)
    bases = [plane_k4, triangular_prism, diamond]
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        roll = rng.random()
        if roll < 0.45:
            G = rng.choice(bases)()
        elif roll < 0.65:
            G = nested_prisms(1, rng.randint(3, 7), rng)
        elif roll < 0.75:
            G = random_cubic_plane(1, 3, rng, rungs=1)
        else:
            G = delaunay_graph(rng.randint(4, 6), rng.randrange(10**6), doubled=rng.choice((0.0, 0.3)))
        vs = list(range(G.n))
        rng.shuffle(vs)
        ns, nt = rng.randint(1, 2), rng.randint(1, 2)
        S, T = vs[:ns], vs[ns:ns + nt]
        up = [Fraction(rng.randint(0, 6), rng.choice((1, 1, 2))) for _ in range(G.m)]
        lo = [Fraction(0)] * G.m
        N = ExtFlowNetwork.create(G, up, lo, S, T)
        if rng.random() < 0.5:
            x = lp_flow(N, [rng.uniform(-1, 1) for _ in range(G.m + ns + nt)])
            f = rational_flow(N, x) if x is not None else None
            if f is not None:
                lo = [min(up[e], f[e] * Fraction(rng.randint(0, 4), 4)) for e in range(G.m)]
                N = ExtFlowNetwork.create(G, up, lo, S, T)
        try:
            P = prepare_extended(N)
        except PlaneFlowError:
            continue
        if transform_network(P).graph.n > max_hat:
            continue
        out.append(N)
    return out
