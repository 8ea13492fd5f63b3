# %% [markdown]
# Plane graphs as rotation systems
#
# A plane digraph here is nothing more than edge endpoints plus, at each
# vertex, the clockwise order of its incident edges.  Faces fall out of
# that data; no coordinates are needed once the rotations are known.

# %%
from fractions import Fraction

from planeflow import FlowNetwork, format_pfn, parse_pfn, undirect
from planeflow.instances import diamond, from_drawing

G = diamond()
print("vertices", G.n, "edges", G.m)
print("rotations", G.rotation)

# %% [markdown]
# Face tracing walks each dart around the face on its left.  Euler's
# formula `n - m + f = 2` is checked when the graph is built, so an
# inconsistent rotation never gets this far.

# %%
F = G.faces
print("faces", len(F), "outer face", F.outer)
for i, face in enumerate(F.faces):
    print(i, [(d >> 1, "rev" if d & 1 else "fwd") for d in face])

# %% [markdown]
# A drawing is a convenient way to get rotations.  Two antiparallel edges
# drawn as a thin lens form a two-edge cycle; the undirected view merges
# them into one edge.

# %%
H = from_drawing(
    [(0, 0), (4, 0), (2, 3)],
    [(0, 1), (1, 0), (1, 2), (2, 0)],
    {(0, 0): 1, (1, 0): 179, (0, 1): -1, (1, 1): 181},
)
print("two-edge cycles", H.two_edge_cycles(), "undirected edges", undirect(H).m)

# %% [markdown]
# Networks travel as `.pfn` text.  Printing is canonical, so a parse and
# print round trip gives the same bytes back.

# %%
N = FlowNetwork(G, tuple(map(Fraction, (3, 2, 2, 3, 1))), 0, 3)
text = format_pfn(N)
print(text)
assert format_pfn(parse_pfn(text)) == text
