# %% [markdown]
# Bringing a network into normal form
#
# The core algorithm wants a biconnected graph with minimum degree three.
# `normalize` splits at cut vertices, contracts directed chains of
# degree-2 vertices and pads degree-2 terminals with a small gadget.  The
# pieces are solved separately and their values combined by a minimum:
# all flow must pass every cut vertex between the terminals.

# %%
import random
from planeflow import dinic_max_flow, max_flow_value, normalize
from planeflow.bench import instance_for_size
from planeflow.generators import degree2_terminal, glue, subdivide_edges

rng = random.Random(3)
# small instances whose sink is reachable from the source
a = instance_for_size("nested-prisms", 2, 16, seed=1)
b = instance_for_size("nested-cycles", 2, 16, seed=3)
N = glue(a, b)
nets, report = normalize(N)
print("segments", len(report.segments))
values = [dinic_max_flow(s.network).value if s.network else s.value for s in report.segments]
print("segment values", [str(v) for v in values])
print("min", min(values), " oracle", dinic_max_flow(N).value, " pipeline", max_flow_value(N))

# %% [markdown]
# Chains of subdivided edges collapse to one edge carrying the smallest
# capacity on the chain.

# %%
C = subdivide_edges(a, 3, rng, chain=2)
nets, report = normalize(C)
print(C.G.n, "vertices before,", nets[0].G.n, "after")
print([act.kind for act in report.actions][:6])
assert max_flow_value(C) == dinic_max_flow(C).value

# %% [markdown]
# A source of degree two gets three extra vertices around it so that
# every vertex has degree at least three; the value does not move.

# %%
D = degree2_terminal(a, random.Random(0), "s")
_, report = normalize(D)
print([act.as_json() for act in report.actions if act.kind.startswith("gadget")])
print("value", max_flow_value(D), "oracle", dinic_max_flow(D).value)
