import random
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from planeflow import FlowNetwork, build_plane_graph, dinic_max_flow, feasible_flow_with_lower_bounds, project_interval
from planeflow.instances import diamond
from planeflow.lp import ExactLP, LPInfeasible
from planeflow.network import ExtFlowNetwork, common_scale
from planeflow.oracle import ComponentLP, verify_flow
from planeflow.transform import transform_network
from planeflow.typings import leaf_typing

from corpus import delaunay_network

F = Fraction


def diamond_net():
    return FlowNetwork(diamond(), tuple(map(F, (3, 2, 2, 3, 1))), 0, 3)


def test_diamond_value_and_cut():
    res = dinic_max_flow(diamond_net())
    assert res.value == 5
    G = diamond()
    assert {(G.tails[e], G.heads[e]) for e in res.cut_edges} == {(1, 3), (2, 3)}
    assert sum(res.flow[e] for e in G.out_edges(0)) == 5


def test_zero_capacities():
    N = FlowNetwork(diamond(), (F(0),) * 5, 0, 3)
    assert dinic_max_flow(N).value == 0


def test_path_value_is_its_bottleneck():
    caps = [F(7), F(5, 2), F(4), F(9)]
    G = build_plane_graph(5, [(i, i + 1) for i in range(4)], [[0], [0, 1], [1, 2], [2, 3], [3]])
    assert dinic_max_flow(FlowNetwork(G, tuple(caps), 0, 4)).value == F(5, 2)


@given(n=st.integers(4, 30), seed=st.integers(0, 10**6), doubled=st.floats(0, 0.4))
def test_dinic_matches_networkx(n, seed, doubled):
    N = delaunay_network(n, seed, doubled)
    res = dinic_max_flow(N)
    verify_flow(N.as_extended(), res.flow)
    sc = common_scale(N.capacity)
    g = nx.DiGraph()
    g.add_nodes_from(range(N.G.n))
    for e in range(N.G.m):
        g.add_edge(N.G.tails[e], N.G.heads[e], capacity=int(N.capacity[e] * sc))
    assert res.value == F(nx.maximum_flow_value(g, N.s, N.t), sc)
    assert sum(N.capacity[e] for e in res.cut_edges) == res.value


def test_zero_demand_has_zero_witness():
    N = diamond_net().as_extended()
    res = feasible_flow_with_lower_bounds(N, {0: F(0), 3: F(0)})
    assert res is not None and all(x == 0 for x in res.flow)


def test_induced_demand_of_a_flow_is_realized():
    N = diamond_net().as_extended()
    f = dinic_max_flow(diamond_net()).flow
    g = verify_flow(N, f)
    res = feasible_flow_with_lower_bounds(N, g)
    assert res is not None and res.value == 5


def test_demand_over_the_min_cut_is_refused():
    N = diamond_net().as_extended()
    assert feasible_flow_with_lower_bounds(N, {0: F(11, 2), 3: F(11, 2)}) is None
    assert feasible_flow_with_lower_bounds(N, {0: F(3), 3: F(2)}) is None


def test_lower_bounds_are_respected():
    lo = (F(2), F(0), F(0), F(0), F(0))
    N = ExtFlowNetwork(diamond(), tuple(map(F, (3, 2, 2, 3, 1))), lo, (0,), (3,))
    assert feasible_flow_with_lower_bounds(N, {0: F(1), 3: F(1)}) is None
    res = feasible_flow_with_lower_bounds(N, {0: F(2), 3: F(2)})
    assert res is not None and res.flow[0] >= 2


@given(seed=st.integers(0, 10**6))
def test_exact_lp_matches_scipy(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(1, 4), rng.randint(2, 6)
    A = [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
    x0 = [rng.randint(0, 4) for _ in range(cols)]
    b = [sum(a * x for a, x in zip(row, x0)) for row in A]  # feasible by construction
    # box every variable so the optimum is finite
    A += [[int(i == j) for j in range(cols)] + [0] * i + [1] + [0] * (cols - i - 1) for i in range(cols)]
    A = [row + [0] * (2 * cols - len(row)) for row in A]
    b += [5] * cols
    c = [rng.randint(-5, 5) for _ in range(cols)] + [0] * cols
    value, x = ExactLP(A, b).maximize(c)
    ref = linprog(-np.array(c, float), A_eq=np.array(A, float), b_eq=np.array(b, float), bounds=(0, None), method="highs")
    assert ref.status == 0
    assert abs(float(value) + ref.fun) < 1e-7
    assert all(sum(F(a) * xi for a, xi in zip(row, x)) == bi for row, bi in zip(A, b))


def test_exact_lp_detects_infeasibility():
    with pytest.raises(LPInfeasible):
        ExactLP([[1, 1]], [-1])


def test_single_vertex_all_items_is_zero():
    N = diamond_net().as_extended()
    lp = ComponentLP(N, [1])
    assert lp.interval(lp.items) == (0, 0)


@pytest.mark.parametrize("v", range(4))
def test_leaf_projection_matches_leaf_typing(v):
    N = diamond_net().as_extended()
    node = leaf_typing(N, v)
    lp = ComponentLP(N, [v])
    assert tuple(lp.items) == node.items
    for m in range(node.full + 1):
        sub = [it for i, it in enumerate(node.items) if m >> i & 1]
        assert lp.interval(sub) == node.interval(m)


def test_whole_transformed_network_source_interval():
    T = transform_network(diamond_net())
    TN = T.network()
    assert project_interval(TN, range(T.graph.n), [T.s]) == (0, 5)
    assert project_interval(TN, range(T.graph.n), [T.t]) == (-5, 0)


@given(n=st.integers(4, 12), seed=st.integers(0, 10**6))
def test_source_projection_is_zero_to_max_flow(n, seed):
    N = delaunay_network(n, seed)
    E = N.as_extended()
    assert project_interval(E, range(N.G.n), [N.s]) == (0, dinic_max_flow(N).value)
