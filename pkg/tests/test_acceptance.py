"""Acceptance criteria 1 to 9, one test each.

Every test records a PASS/FAIL line through the ``verdict`` fixture; the
lines are repeated in a summary section at the end of the run.  Transform
runs made by the pipeline are logged while this module runs; criteria 4
and 5 come last and check every logged run plus a Delaunay corpus.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import cache

import pytest

import planeflow.typings as typings_mod
from planeflow import (
    build_reassembling,
    compute_typing,
    dinic_max_flow,
    edge_outerplanarity,
    flow_intervals,
    induced_io,
    max_flow_value,
    normalize,
    satisfies,
    to_cubic,
    transform_network,
    vertex_outerplanarity,
)
from planeflow.bench import bench, instance_for_size
from planeflow.errors import Infeasible, PlaneFlowError
from planeflow.generators import (
    FAMILIES,
    degree2_terminal,
    generate_instance,
    glue,
    random_capacity,
    subdivide_edges,
)
from planeflow.instances import four_regular_example
from planeflow.oracle import ComponentLP, feasible_flow_with_lower_bounds, project_interval
from planeflow.preprocess import prepare_extended
from planeflow.reassembling import alpha_measure

from corpus import delaunay_graph, delaunay_network, lp_flow, rational_flow, small_networks

# --------------------------------------------------------------------------
# shared corpora


@cache
def generator_corpus() -> tuple:
    """510 instances: 3 families, generator k = 1..5, 34 sizes each up to 2e4 vertices."""
    small = [round(20 * 100 ** (i / 29)) for i in range(30)]  # 20 .. 2000, geometric
    large = [4000, 8000, 14000, 20000]
    out = []
    for fam in FAMILIES:
        for kg in range(1, 6):
            for i, n in enumerate(small + large):
                # instance_for_size takes the measured target, one above the generator k
                N = instance_for_size(fam, kg + 1, n, seed=1000 * kg + i)
                out.append((f"{fam} k={kg} n~{n} seed={1000 * kg + i}", N))
    return tuple(out)


@dataclass(frozen=True)
class TransformRun:
    label: str
    n: int
    m: int
    n_hat: int
    m_hat: int
    k: int
    k_hat: int
    clean: bool  # cubic and free of two-edge cycles


RUNS: list[TransformRun] = []
_transform = typings_mod.transform_network


def _log(label, G, H) -> None:
    RUNS.append(TransformRun(
        label, G.n, G.m, H.n, H.m,
        edge_outerplanarity(G).k, edge_outerplanarity(H).k,
        H.is_cubic() and not H.two_edge_cycles(),
    ))


def _logged_transform(N):
    T = _transform(N)
    _log("pipeline", N.G, T.graph)
    return T


@pytest.fixture(scope="module", autouse=True)
def _watch_transforms():
    mp = pytest.MonkeyPatch()
    mp.setattr(typings_mod, "transform_network", _logged_transform)
    yield
    mp.undo()


@cache
def delaunay_runs() -> tuple:
    """to_cubic over 300 Delaunay graphs, some with two-edge cycles or thinned edges."""
    out = []
    seed = -1
    while len(out) < 300:
        seed += 1
        n = 6 + seed % 115
        doubled = (0.0, 0.25)[seed % 2]
        drop = (0.0, 0.3)[(seed // 2) % 2]
        G = delaunay_graph(n, seed, doubled=doubled, drop=drop)
        if min(G.degree(v) for v in range(G.n)) < 3:
            continue  # a hull vertex with two neighbours is outside the transform's domain
        H, _ = to_cubic(G)
        _log(f"delaunay n={n} seed={seed} doubled={doubled} drop={drop}", G, H)
        out.append((G, H))
    return tuple(out)


# --------------------------------------------------------------------------
# 1


def test_criterion_1_oracle_equivalence(verdict):
    corpus = generator_corpus()
    t0 = time.perf_counter()
    bad = []
    largest = 0
    for label, N in corpus:
        largest = max(largest, N.G.n)
        got, ref = max_flow_value(N), dinic_max_flow(N).value
        if got != ref:
            bad.append(f"{label}: {got} != {ref}")
    elapsed = time.perf_counter() - t0
    ok = len(corpus) >= 500 and not bad and elapsed < 600
    verdict(1, ok, f"{len(corpus)} instances, max n {largest}, {len(bad)} mismatches, {elapsed:.0f} s"
            + (f"; first: {bad[0]}" if bad else ""))
    assert len(corpus) >= 500
    assert not bad, bad[:5]
    assert elapsed < 600


# --------------------------------------------------------------------------
# 2


def test_criterion_2_four_regular_example(verdict):
    G = four_regular_example()
    kv, ke = vertex_outerplanarity(G), edge_outerplanarity(G).k
    verdict(2, (kv, ke) == (2, 4), f"k_V = {kv}, k_E = {ke} (expected 2 and 4)")
    assert (kv, ke) == (2, 4)


# --------------------------------------------------------------------------
# 3


def test_criterion_3_cubic_layer_sandwich(verdict):
    graphs = [(label, N.G) for label, N in generator_corpus()]
    graphs += [(f"delaunay #{i} expanded", H) for i, (_, H) in enumerate(delaunay_runs())]
    bad = []
    for label, G in graphs:
        assert G.is_cubic(), label
        kv, ke = vertex_outerplanarity(G), edge_outerplanarity(G).k
        if not kv <= ke <= kv + 1:
            bad.append(f"{label}: k_V={kv} k_E={ke}")
    verdict(3, not bad, f"{len(graphs)} cubic plane graphs, {len(bad)} violations of k_V <= k_E <= k_V + 1")
    assert not bad, bad[:5]


# --------------------------------------------------------------------------
# 6


def test_criterion_6_alpha_bound(verdict):
    bad = []
    worst = 0.0
    graphs = [(label, N.G) for label, N in generator_corpus()]
    graphs += [(f"delaunay #{i} expanded", H) for i, (_, H) in enumerate(delaunay_runs())]
    for label, G in graphs:
        k = edge_outerplanarity(G).k
        am = alpha_measure(G, build_reassembling(G))
        worst = max(worst, am.alpha / (2 * k))
        if am.alpha > 2 * k:
            bad.append(f"{label}: alpha {am.alpha} > {2 * k} at node {am.node}")
    verdict(6, not bad, f"{len(graphs)} graphs, {len(bad)} violations, max alpha/2k = {worst:.2f}"
            + (f"; witness {bad[0]}" if bad else ""))
    assert not bad, bad[:5]


# --------------------------------------------------------------------------
# 7


def _subset_items(node, mask):
    return [it for i, it in enumerate(node.items) if mask >> i & 1]


def test_criterion_7_typing_round_trip(verdict):
    nets = small_networks(120, seed=0)
    rng = random.Random(7)
    sound = accepted = rejected = node_checks = infeasible = hat_max = 0
    bad = []
    for idx, N in enumerate(nets):
        try:
            tau = flow_intervals(N)
        except Infeasible:
            infeasible += 1
            if lp_flow(N, [0.0] * (N.G.m + len(N.terminals))) is not None:
                bad.append(f"net {idx}: pipeline says infeasible, LP finds a flow")
            continue
        # (a) flows found by the LP oracle
        for _ in range(8):
            x = lp_flow(N, [rng.uniform(-1, 1) for _ in range(N.G.m + len(N.terminals))])
            f = rational_flow(N, x) if x is not None else None
            if f is None:
                continue
            sound += 1
            if not satisfies(induced_io(f, N), tau):
                bad.append(f"net {idx}: feasible flow violates the typing")
        # (b) grid samples, balanced most of the time
        terms = list(tau.terminals)
        top = max(max(tau.hi), -min(tau.lo), Fraction(1))
        grid = [top * Fraction(j, 4) for j in range(6)]
        for _ in range(25):
            g = {v: rng.choice(grid) for v in terms}
            last = terms[-1]
            if rng.random() < 0.7:
                bal = sum(g[v] for v in N.sources if v != last) - sum(g[v] for v in N.sinks if v != last)
                g[last] = -bal if last in N.sources else bal
                if g[last] < 0:
                    continue
            ok = satisfies(g, tau)
            real = feasible_flow_with_lower_bounds(N, g) is not None
            accepted += ok
            rejected += not ok
            if ok != real:
                bad.append(f"net {idx}: g={g} typing says {ok}, oracle says {real}")
        # (c) every node of the tree, and the root against the original network
        P = prepare_extended(N)
        T = transform_network(P)
        TN = T.network()
        hat_max = max(hat_max, T.graph.n)
        B = build_reassembling(T.graph)
        full = compute_typing(TN, B, keep_nodes=True)
        for x, node in full.nodes.items():
            # one LP per node; project_interval is the single-query form of the same LP
            lp = ComponentLP(TN, B.vertices(x))
            for mask in range(node.full + 1):
                node_checks += 1
                if lp.interval(_subset_items(node, mask)) != node.interval(mask):
                    bad.append(f"net {idx}: node {x} subset {mask:b}")
        for A, lo, hi in zip(tau.subsets(), tau.lo, tau.hi):
            node_checks += 1
            if project_interval(N, range(N.G.n), list(A)) != (lo, hi):
                bad.append(f"net {idx}: root subset {A}")
    ok = len(nets) >= 100 and hat_max <= 14 and not bad and sound and accepted and rejected
    verdict(7, ok, f"{len(nets)} networks ({infeasible} infeasible): {sound} oracle flows, "
            f"{accepted} accepted / {rejected} rejected grid points, {node_checks} node intervals, "
            f"{len(bad)} disagreements, largest n_hat {hat_max}")
    assert len(nets) >= 100 and hat_max <= 14
    assert not bad, bad[:5]
    assert sound and accepted and rejected


# --------------------------------------------------------------------------
# 8


def test_criterion_8_linear_scaling(verdict, monkeypatch):
    # time the bare pipeline, without the transform logging above
    monkeypatch.setattr(typings_mod, "transform_network", _transform)
    table = bench("nested-prisms", 2, [1000, 3000, 10000, 30000, 100000], reps=3)
    slope = table.exponent
    sweep = []
    for k in range(2, 7):
        row = bench("nested-prisms", k, [3000], reps=3).rows[0]
        sweep.append((row.k, row.seconds))
    monotone = all(a[1] < b[1] for a, b in zip(sweep, sweep[1:]))
    times = ", ".join(f"{r.n}:{r.seconds:.2f}s" for r in table.rows)
    ks = ", ".join(f"k={k}:{s:.3f}s" for k, s in sweep)
    verdict(8, slope <= 1.25, f"exponent {slope:.3f} (<= 1.25) over {times}; "
            f"n~3000 sweep {ks}, monotone in k: {monotone}")
    assert all(r.k == 2 for r in table.rows)
    assert slope <= 1.25


# --------------------------------------------------------------------------
# 9


def _base(rng):
    fam = rng.choice(FAMILIES)
    return generate_instance(fam, rng.randint(1, 3), rng.randint(3, 8), rng.randrange(10**6))


def preprocessing_corpus(count: int = 240):
    rng = random.Random(9)
    kinds = ("glue", "bridge", "chains", "deg2-s", "deg2-t", "mixed", "delaunay")
    out = []
    for i in range(count):
        kind = kinds[i % len(kinds)]
        if kind == "glue":
            N = glue(_base(rng), _base(rng))
        elif kind == "bridge":
            N = glue(_base(rng), _base(rng), bridge=random_capacity(rng, 0.0))
        elif kind == "chains":
            N = subdivide_edges(_base(rng), rng.randint(1, 6), rng, chain=rng.randint(1, 3))
        elif kind == "deg2-s":
            N = degree2_terminal(_base(rng), rng, "s")
        elif kind == "deg2-t":
            N = degree2_terminal(_base(rng), rng, "t")
        elif kind == "mixed":
            a = subdivide_edges(_base(rng), rng.randint(1, 4), rng, chain=2)
            b = degree2_terminal(_base(rng), rng, "t")
            N = glue(glue(a, _base(rng)), b, bridge=random_capacity(rng, 0.0) if rng.random() < 0.5 else None)
        else:
            N = delaunay_network(rng.randint(8, 60), rng.randrange(10**6), doubled=0.2, drop=0.3)
        out.append((f"{kind} #{i}", N))
    return out


def test_criterion_9_preprocessing_soundness(verdict):
    corpus = preprocessing_corpus()
    bad = []
    multi = max_would_fail = 0
    for label, N in corpus:
        ref = dinic_max_flow(N).value
        try:
            got = max_flow_value(N)
        except PlaneFlowError as exc:
            bad.append(f"{label}: {type(exc).__name__}: {exc}")
            continue
        if got != ref:
            bad.append(f"{label}: {got} != {ref}")
        try:
            _, report = normalize(N)
        except PlaneFlowError:
            continue
        values = [s.value if s.network is None else dinic_max_flow(s.network).value for s in report.segments]
        if len(values) > 1:
            multi += 1
            max_would_fail += max(values) != ref
    verdict(9, not bad, f"{len(corpus)} instances, {len(bad)} mismatches; {multi} split at cut vertices, "
            f"min combiner right on all, max would be wrong on {max_would_fail}")
    assert not bad, bad[:5]


# --------------------------------------------------------------------------
# 4 and 5, last so that they see every transform run logged above


def test_criterion_4_size_bounds(verdict):
    delaunay_runs()
    bad = []
    for r in RUNS:
        ok = r.clean and r.m_hat <= 3 * r.m and r.n_hat <= r.n + 2 * r.m
        if r.n >= 3:
            ok = ok and r.m_hat <= 18 * r.n - 36 and r.n_hat <= 13 * r.n - 24
        if not ok:
            bad.append(r)
    verdict(4, not bad, f"{len(RUNS)} transform runs, {len(bad)} violations")
    assert not bad, bad[:5]


def test_criterion_5_outerplanarity_invariance(verdict):
    delaunay_runs()
    lower = [r for r in RUNS if r.k_hat < r.k]
    higher = [r for r in RUNS if r.k_hat > r.k]
    worst = max((r.k_hat - r.k for r in RUNS), default=0)
    detail = (f"{len(RUNS)} transform runs: {len(RUNS) - len(lower) - len(higher)} equal, "
              f"{len(lower)} lower, {len(higher)} higher (max rise {worst})")
    if lower or higher:
        w = (higher or lower)[0]
        detail += f"; e.g. {w.label}: {w.k} -> {w.k_hat}"
    verdict(5, not lower and not higher, detail)
    assert not lower and not higher, detail
