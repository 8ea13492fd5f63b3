# %% [markdown]
# Checking against Dinic, and watching the running time
#
# `max_flow_value` is exact over the rationals, so agreement with the
# classical algorithm is plain equality.

# %%
from planeflow import dinic_max_flow, max_flow_value
from planeflow.bench import bench
from planeflow.generators import FAMILIES, generate_instance

for fam in FAMILIES:
    for k in (1, 2, 3):
        N = generate_instance(fam, k, 10, 5)
        v, ref = max_flow_value(N), dinic_max_flow(N).value
        assert v == ref
        print(f"{fam:<20} k={k} n={N.G.n:>4} value={v}")

# %% [markdown]
# At a fixed number of layers the time should grow about linearly in n.

# %%
table = bench("nested-prisms", 2, [500, 1000, 2000, 4000], reps=1)
print(table.format())

# %% [markdown]
# At a fixed size, more layers mean larger boundaries and bigger tables.

# %%
for k in (2, 3, 4):
    print(bench("nested-prisms", k, [1000], reps=1).format().splitlines()[2])
