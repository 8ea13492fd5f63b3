# %% [markdown]
# Rewriting into a cubic graph
#
# Each vertex of degree four or more is replaced by a directed cycle with
# one attachment per original edge; then both ends of every two-edge
# cycle are expanded the same way.  Fresh cycle edges get a capacity
# larger than any cut, so the maximum flow value does not change.

# %%
from fractions import Fraction

from planeflow import dinic_max_flow, edge_outerplanarity, to_cubic, transform_network
from planeflow.instances import four_regular_example, plane_k4

G = four_regular_example()
H, traces = to_cubic(G)
print(f"n {G.n} -> {H.n}, m {G.m} -> {H.m}, cubic: {H.is_cubic()}")
print(f"|E| <= 3m: {H.m <= 3 * G.m}, |V| <= n + 2m: {H.n <= G.n + 2 * G.m}")

# %% [markdown]
# The number of layers is usually kept, but not always.  The cycle's face
# touches every face around the expanded vertex, so it can act as a
# shortcut towards the outer face (fewer layers), or it can sit one step
# deeper than the faces it separates (one more layer).  The pipeline always
# measures the layers on the cubic graph it actually works with.

# %%
print("four-regular graph: k", edge_outerplanarity(G).k, "->", edge_outerplanarity(H).k)

# %%
from planeflow import FlowNetwork

N = FlowNetwork(plane_k4(), (Fraction(2),) * 6, 0, 3)
T = transform_network(N.as_extended())
print("big capacity", T.big)
M = FlowNetwork(T.graph, T.upper, T.s, T.t)
print("value before", dinic_max_flow(N).value, "after", dinic_max_flow(M).value)
