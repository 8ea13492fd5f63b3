"""Reassembling trees over the vertices of a plane graph.

A reassembling is a rooted binary tree whose leaves are the single vertices
and whose internal nodes are unions of their two children.  Leaves take
node ids ``0..n-1`` (leaf ``v`` holds vertex ``v``); internal nodes are
numbered in creation order, so children always precede their parent.

:func:`build_reassembling` uses a tree-cotree split.  The dual BFS tree from
the outer face has depth at most ``k`` and its complement is a spanning
tree ``T`` of the primal graph.  The cut around any subtree of ``T`` is a
fundamental cycle of the dual tree, so it has at most ``2k`` edges.  The
tree is assembled bottom-up along ``T``; at every vertex the pending pieces
are merged greedily, smallest union boundary first.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidTree, NotCubic, NotPlane
from .graph_core import PlaneDiGraph
from .outerplanarity import Layering, edge_outerplanarity

__all__ = [
    "Reassembling",
    "AlphaMeasure",
    "build_reassembling",
    "caterpillar",
    "alpha_measure",
    "check_alpha_bound",
]


@dataclass(frozen=True)
class Reassembling:
    n: int
    left: tuple[int, ...]
    right: tuple[int, ...]
    boundary: tuple[tuple[int, ...], ...]
    root: int

    @property
    def size(self) -> int:
        return len(self.left)

    def is_leaf(self, x: int) -> bool:
        return x < self.n

    def degree(self, x: int) -> int:
        return len(self.boundary[x])

    @property
    def alpha(self) -> int:
        return max(len(b) for b in self.boundary)

    def vertices(self, x: int) -> list[int]:
        out = []
        stack = [x]
        while stack:
            y = stack.pop()
            if y < self.n:
                out.append(y)
            else:
                stack.append(self.right[y])
                stack.append(self.left[y])
        return sorted(out)

    def parents(self) -> list[int]:
        par = [-1] * self.size
        for x in range(self.n, self.size):
            par[self.left[x]] = x
            par[self.right[x]] = x
        return par

    def to_text(self, max_vertices: int = 12) -> str:
        """Indented dump: node id, vertex set (abbreviated), boundary degree."""
        lines = []
        stack = [(self.root, 0)]
        while stack:
            x, depth = stack.pop()
            vs = self.vertices(x)
            shown = " ".join(map(str, vs[:max_vertices])) + (" ..." if len(vs) > max_vertices else "")
            lines.append(f"{'  ' * depth}{x} {{{shown}}} deg={self.degree(x)}")
            if x >= self.n:
                stack.append((self.right[x], depth + 1))
                stack.append((self.left[x], depth + 1))
        return "\n".join(lines)


@dataclass(frozen=True)
class AlphaMeasure:
    alpha: int
    node: int
    degrees: tuple[int, ...]


class _Builder:
    def __init__(self, G: PlaneDiGraph) -> None:
        self.G = G
        self.left = [-1] * G.n
        self.right = [-1] * G.n
        self.boundary: list[tuple[int, ...]] = [tuple(sorted(G.rotation[v])) for v in range(G.n)]

    def union_boundary(self, x: int, y: int) -> tuple[int, ...]:
        return tuple(sorted(set(self.boundary[x]).symmetric_difference(self.boundary[y])))

    def merge(self, x: int, y: int, bnd: tuple[int, ...] | None = None) -> int:
        if bnd is None:
            bnd = self.union_boundary(x, y)
        self.left.append(x)
        self.right.append(y)
        self.boundary.append(bnd)
        return len(self.left) - 1

    def greedy(self, pieces: list[int]) -> int:
        while len(pieces) > 1:
            best = None
            for i in range(len(pieces)):
                for j in range(i + 1, len(pieces)):
                    b = self.union_boundary(pieces[i], pieces[j])
                    if best is None or len(b) < len(best[2]):
                        best = (i, j, b)
            i, j, b = best
            node = self.merge(pieces[i], pieces[j], b)
            pieces = [p for q, p in enumerate(pieces) if q not in (i, j)] + [node]
        return pieces[0]

    def done(self, root: int) -> Reassembling:
        return Reassembling(self.G.n, tuple(self.left), tuple(self.right), tuple(self.boundary), root)


def _dual_tree_edges(G: PlaneDiGraph) -> list[bool]:
    F = G.faces
    fo = F.face_of
    incident: list[list[int]] = [[] for _ in range(len(F))]
    for e in range(G.m):
        a, b = fo[2 * e], fo[2 * e + 1]
        if a != b:
            incident[a].append(e)
            incident[b].append(e)
    in_dual = [False] * G.m
    seen = [False] * len(F)
    seen[F.outer] = True
    q = deque([F.outer])
    while q:
        f = q.popleft()
        for e in sorted(incident[f]):
            g = fo[2 * e] if fo[2 * e] != f else fo[2 * e + 1]
            if not seen[g]:
                seen[g] = True
                in_dual[e] = True
                q.append(g)
    return in_dual


def build_reassembling(G: PlaneDiGraph, layering: Layering | None = None) -> Reassembling:
    """Reassembling of a cubic plane graph with boundary degree about ``2k``.

    ``layering`` is accepted for interface symmetry with the peeling step; the
    construction reads the same dual distances directly from the faces.
    """
    if not G.is_cubic():
        raise NotCubic("build_reassembling needs a 3-regular graph")
    if G.outer_dart is None:
        raise NotPlane("no outer face designated")
    in_dual = _dual_tree_edges(G)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(G.n)]
    for e in range(G.m):
        if not in_dual[e]:
            a, b = G.tails[e], G.heads[e]
            adj[a].append((b, e))
            adj[b].append((a, e))
    for lst in adj:
        lst.sort()
    root_v = 0
    parent = [-1] * G.n
    seen = [False] * G.n
    seen[root_v] = True
    order = []
    stack = [root_v]
    while stack:
        v = stack.pop()
        order.append(v)
        for w, _ in reversed(adj[v]):
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                stack.append(w)
    if len(order) != G.n:  # pragma: no cover - complement of a dual tree spans
        raise NotPlane("cotree complement is not spanning; embedding inconsistent")
    children: list[list[int]] = [[] for _ in range(G.n)]
    for v in order[1:]:
        children[parent[v]].append(v)
    b = _Builder(G)
    done = [-1] * G.n
    for v in reversed(order):
        done[v] = b.greedy([v] + [done[c] for c in sorted(children[v])])
    return b.done(done[root_v])


def caterpillar(G: PlaneDiGraph, order: Sequence[int] | None = None) -> Reassembling:
    """Left-deep tree adding the vertices one at a time in ``order``."""
    if order is None:
        order = range(G.n)
    order = list(order)
    if sorted(order) != list(range(G.n)):
        raise ValueError("order must be a permutation of the vertices")
    b = _Builder(G)
    acc = order[0]
    for v in order[1:]:
        acc = b.merge(acc, v)
    return b.done(acc)


def _validate(G: PlaneDiGraph, B: Reassembling) -> list[int]:
    n = G.n
    if B.n != n or B.size != max(2 * n - 1, 0) or len(B.right) != B.size:
        raise InvalidTree(f"expected {2 * n - 1} nodes over {n} leaves, got {B.size}")
    for v in range(n):
        if B.left[v] != -1 or B.right[v] != -1:
            raise InvalidTree(f"leaf {v} has children")
    parent = [-1] * B.size
    for x in range(n, B.size):
        for c in (B.left[x], B.right[x]):
            if not (0 <= c < B.size) or c == x:
                raise InvalidTree(f"node {x} has bad child {c}")
            if parent[c] != -1:
                raise InvalidTree(f"node {c} has two parents")
            parent[c] = x
    roots = [x for x in range(B.size) if parent[x] == -1]
    if roots != [B.root]:
        raise InvalidTree(f"roots {roots[:3]} do not match declared root {B.root}")
    # every node reachable from the root exactly once (rules out cycles)
    seen = 0
    stack = [B.root]
    while stack:
        x = stack.pop()
        seen += 1
        if seen > B.size:
            raise InvalidTree("cycle in tree")
        if x >= n:
            stack.extend((B.left[x], B.right[x]))
    if seen != B.size:
        raise InvalidTree("tree is not connected")
    return parent


def alpha_measure(G: PlaneDiGraph, B: Reassembling) -> AlphaMeasure:
    """Boundary degrees recomputed from the edge list alone."""
    parent = _validate(G, B)
    size = B.size
    # offline LCA (Tarjan) over an iterative post-order
    queries: list[list[tuple[int, int]]] = [[] for _ in range(G.n)]
    for e in range(G.m):
        a, b = G.tails[e], G.heads[e]
        queries[a].append((b, e))
        queries[b].append((a, e))
    uf = list(range(size))

    def find(x: int) -> int:
        while uf[x] != x:
            uf[x] = uf[uf[x]]
            x = uf[x]
        return x

    anc = list(range(size))
    finished = [False] * size
    lca = [-1] * G.m
    stack: list[tuple[int, bool]] = [(B.root, False)]
    while stack:
        x, post = stack.pop()
        if not post:
            stack.append((x, True))
            if x >= B.n:
                stack.append((B.right[x], False))
                stack.append((B.left[x], False))
            continue
        if x < B.n:
            finished[x] = True
            for w, e in queries[x]:
                if finished[w] and lca[e] < 0:
                    lca[e] = anc[find(w)]
        p = parent[x]
        if p >= 0:
            # fold x into its parent as soon as x's subtree is done
            r = find(p)
            uf[find(x)] = r
            anc[r] = p
    delta = [0] * size
    for e in range(G.m):
        a, b = G.tails[e], G.heads[e]
        delta[a] += 1
        delta[b] += 1
        delta[lca[e]] -= 2
    deg = delta[:]
    order = []
    stack2 = [B.root]
    while stack2:
        x = stack2.pop()
        order.append(x)
        if x >= B.n:
            stack2.extend((B.left[x], B.right[x]))
    for x in reversed(order):
        if parent[x] >= 0:
            deg[parent[x]] += deg[x]
    best = max(range(size), key=lambda x: (deg[x], -x)) if size else -1
    return AlphaMeasure(deg[best] if size else 0, best, tuple(deg))


def check_alpha_bound(G: PlaneDiGraph, B: Reassembling, k: int | None = None) -> AlphaMeasure:
    """Raise ``AssertionError`` naming a witness node if α exceeds ``2k``."""
    if k is None:
        k = edge_outerplanarity(G).k
    am = alpha_measure(G, B)
    if am.alpha > 2 * k:
        raise AssertionError(
            f"alpha {am.alpha} > 2k = {2 * k} at node {am.node} "
            f"(vertices {B.vertices(am.node)[:10]})"
        )
    return am


def boundary_of(G: PlaneDiGraph, vertices: Iterable[int]) -> set[int]:
    vs = set(vertices)
    return {e for e in range(G.m) if (G.tails[e] in vs) != (G.heads[e] in vs)}
