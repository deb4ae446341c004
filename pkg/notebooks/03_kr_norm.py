# %% [markdown]
# # The Kantorovich-Rubinstein norm
# On sum-zero vectors, the cheapest way to ship the positive part onto the
# negative part. Its unit ball is the fundamental polytope, so the transport
# LP and the polytope gauge must agree exactly.

# %%
import random
from fractions import Fraction

from krpolytope import DistanceMatrix, analyze, random_metric
from krpolytope.kr_norm import gauge_norm, optimal_plan, transport_norm, unit_vector_difference

D = DistanceMatrix.unit(3)
v = [Fraction(1), Fraction(-1, 2), Fraction(-1, 2)]
transport_norm(D, v), gauge_norm(analyze(D).hrep, v)

# %%
plan = optimal_plan(D, v)
for row in plan.psi:
    print([str(x) for x in row])

# %% [markdown]
# Random metric on 5 points: both sides agree on random vectors.

# %%
D = random_metric(5, seed=3, denominator_bound=50)
H = analyze(D).hrep
rng = random.Random(0)
for _ in range(5):
    head = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4)]
    v = head + [-sum(head)]
    lp, g = transport_norm(D, v), gauge_norm(H, v)
    print(lp, g, lp == g)

# %% [markdown]
# On point masses the norm gives back the metric.

# %%
all(transport_norm(D, unit_vector_difference(5, x, y)) == D[x, y] for x in range(5) for y in range(5) if x != y)

# %% [markdown]
# For the unit metric it is half the l1 norm.

# %%
U = DistanceMatrix.unit(4)
v = [Fraction(3), Fraction(-1), Fraction(-1, 2), Fraction(-3, 2)]
transport_norm(U, v), sum(abs(x) for x in v) / 2
