# %% [markdown]
# # Counting combinatorial types
# Sample random metrics, canonize the vertex-facet incidence of each polytope
# and tally distinct types. Seeds are per sample, so the worker count never
# changes the result.

# %%
from krpolytope.census import SamplerParams, format_report, registry_report, run_census

reg = run_census(3, 100, seed=0, params=SamplerParams(strict=True))
print(format_report(registry_report(reg)))

# %% [markdown]
# With non-strict sampling on a coarse grid, degenerate triangles show up as
# a second type: a parallelogram instead of a hexagon.

# %%
reg = run_census(3, 60, seed=5, params=SamplerParams(denominator_bound=20))
print(format_report(registry_report(reg)))

# %%
reg4 = run_census(4, 40, seed=1, params=SamplerParams(denominator_bound=100), workers=2)
print(format_report(registry_report(reg4)))

# %% [markdown]
# The l1-type sampler draws points in a cube and measures l1 distances.

# %%
reg_e = run_census(4, 20, seed=1, params=SamplerParams(mode="euclidean", denominator_bound=10))
print(format_report(registry_report(reg_e)))
