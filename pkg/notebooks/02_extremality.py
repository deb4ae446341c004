# %% [markdown]
# # Triangle inequality as a polytope condition
# A symmetric positive matrix is a metric exactly when none of the points
# e_{x,y} = (1_x - 1_y)/d(x,y) lies strictly inside the hull of the others.

# %%
from krpolytope import DistanceMatrix, validate_metric, extremality_metric_test
from krpolytope.metric_space import fundamental_vectors, is_interior_point


def tri(a, b, c):
    return DistanceMatrix([[0, a, b], [a, 0, c], [b, c, 0]])


for D in (tri(1, 1, 1), tri(1, 1, 2), tri(1, 1, 3)):
    print(D.d[1][2], validate_metric(D).is_valid, extremality_metric_test(D))

# %% [markdown]
# The degenerate triangle (1,1,2) is still a metric: e_{1,2} sits on an edge,
# the midpoint of e_{1,0} and e_{0,2}, so it is not interior.

# %%
pts = {p.label: p.coords for p in fundamental_vectors(tri(1, 1, 2))}
mid = tuple((a + b) / 2 for a, b in zip(pts[(1, 0)], pts[(0, 2)]))
mid == pts[(1, 2)]

# %%
others = [c for lab, c in pts.items() if lab != (1, 2)]
is_interior_point(pts[(1, 2)], others)   # False: boundary, not interior

# %% [markdown]
# Stretch d(1,2) to 3 and the point moves inside.

# %%
pts = {p.label: p.coords for p in fundamental_vectors(tri(1, 1, 3))}
others = [c for lab, c in pts.items() if lab != (1, 2)]
is_interior_point(pts[(1, 2)], others)
