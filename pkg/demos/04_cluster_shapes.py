# %% [markdown]
# # Which small clusters can sit inside an OLD-set?
#
# A cluster is a connected component of the code.  Its members are only
# dominated and told apart by each other, so some shapes are ruled out by
# themselves.

# %%
from oldgrid import builtin_lattice, enumerate_clusters, feasible

tri = builtin_lattice("triangular")
for t in range(1, 7):
    shapes = enumerate_clusters(tri, t)
    ok = [s for s in shapes if feasible(tri, s)]
    print(f"t={t}: {len(shapes)} shapes up to isometry, {len(ok)} feasible")

# %% The size-3 and size-4 survivors
for t in (3, 4):
    for s in enumerate_clusters(tri, t):
        v = feasible(tri, s)
        print(t, s.cells, "ok" if v else f"fails: {v.twins or v.isolated}")
