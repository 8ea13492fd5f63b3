# %% [markdown]
# Interval typings
#
# For a network with several sources and sinks, and possibly lower bounds
# on edges, `flow_intervals` returns, for every subset of terminals, the
# smallest and largest net amount that a feasible flow can push out of
# that subset.

# %%
from fractions import Fraction

from planeflow import flow_intervals, induced_io, satisfies
from planeflow.instances import diamond
from planeflow.network import ExtFlowNetwork
from planeflow.oracle import feasible_flow_with_lower_bounds

caps = tuple(map(Fraction, (3, 2, 2, 3, 1)))
lower = (Fraction(2), Fraction(0), Fraction(0), Fraction(0), Fraction(0))
N = ExtFlowNetwork(diamond(), caps, lower, (0, 1), (3,))
tau = flow_intervals(N)
for A, lo, hi in zip(tau.subsets(), tau.lo, tau.hi):
    print(f"{str(list(A)):>10}  [{lo}, {hi}]")

# %% [markdown]
# An assignment of amounts to terminals is realizable exactly when every
# subset stays inside its interval.

# %%
g = {0: Fraction(3), 1: Fraction(1), 3: Fraction(4)}
print("typing accepts", satisfies(g, tau))
res = feasible_flow_with_lower_bounds(N, g)
print("oracle flow", [str(x) for x in res.flow])
print("its terminal amounts", {v: str(x) for v, x in induced_io(res.flow, N).items()})

g_bad = {0: Fraction(1), 1: Fraction(0), 3: Fraction(1)}
print("below the lower bound on s->a:", satisfies(g_bad, tau), feasible_flow_with_lower_bounds(N, g_bad))
