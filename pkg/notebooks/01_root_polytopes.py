# %% [markdown]
# # Root polytopes
# The unit metric puts every pair of points at distance 1. Its fundamental
# polytope is the convex hull of the vectors 1_x - 1_y, i.e. the roots of A_{n-1}.

# %%
from krpolytope import DistanceMatrix, analyze, combinatorial_type
from krpolytope.polytope import facet_size_histogram

for n in range(2, 7):
    P = analyze(DistanceMatrix.unit(n))
    print(n, P.fvector)

# %% [markdown]
# n=3 gives a hexagon, n=4 the cuboctahedron: 8 triangles and 6 squares.

# %%
P = analyze(DistanceMatrix.unit(4))
facet_size_histogram(P.incidence)   # {3: 8, 4: 6}

# %%
for v in P.vrep.vertices[:4]:
    print([str(x) for x in v])

# %% [markdown]
# Combinatorial symmetry. The hexagon has 12 automorphisms (dihedral),
# the cuboctahedron 48. Relabeling points only accounts for n! of them.

# %%
for n in (3, 4, 5):
    T = combinatorial_type(DistanceMatrix.unit(n))
    print(n, T.automorphism_order, T.digest[:16])
