# %% [markdown]
# Peeling layers
#
# Edge-outerplanarity counts how many times the edges on the outer face
# can be stripped off before nothing is left.  It is computed from
# distances in the dual graph, without any actual deletion.

# %%
from planeflow import edge_outerplanarity, vertex_outerplanarity
from planeflow.generators import generate_instance
from planeflow.instances import four_regular_example, plane_k4, triangular_prism

G = four_regular_example()
L = edge_outerplanarity(G)
print("four-regular example: k_E =", L.k, " k_V =", vertex_outerplanarity(G))
print("edges per layer", L.sizes())

# %% [markdown]
# On cubic graphs the two measures are never more than one apart.

# %%
for name, H in [("K4", plane_k4()), ("prism", triangular_prism())]:
    print(name, edge_outerplanarity(H).k, vertex_outerplanarity(H))

for k in range(1, 5):
    H = generate_instance("nested-prisms", k, 6, 0).G
    kv, ke = vertex_outerplanarity(H), edge_outerplanarity(H).k
    assert kv <= ke <= kv + 1
    print(f"nested prisms, {k} rings of spokes: n={H.n} k_V={kv} k_E={ke}")
