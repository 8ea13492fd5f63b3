# %% [markdown]
# Reassembling trees
#
# A reassembling merges the vertices two groups at a time until one group
# is left.  The quantity that matters is the largest number of edges
# leaving any group along the way (alpha).  Building the tree along a
# spanning tree that avoids the dual BFS tree keeps alpha within twice the
# number of layers.

# %%
from planeflow import alpha_measure, build_reassembling, caterpillar, edge_outerplanarity
from planeflow.generators import generate_instance

G = generate_instance("random-cubic-plane", 2, 6, 0).G
k = edge_outerplanarity(G).k
B = build_reassembling(G)
print(f"n={G.n} k={k} alpha={alpha_measure(G, B).alpha} bound={2 * k}")
print(B.to_text().splitlines()[0])

# %% [markdown]
# For contrast, adding vertices in index order grows a long boundary.

# %%
print("caterpillar alpha", alpha_measure(G, caterpillar(G)).alpha)

for ell in (6, 12, 24, 48):
    H = generate_instance("nested-cycles", 3, ell, 1).G
    kH = edge_outerplanarity(H).k
    print(f"ell={ell:>2} n={H.n:>4} k={kH} alpha={alpha_measure(H, build_reassembling(H)).alpha}")
