# %% [markdown]
# # Minimum densities by exhaustive search over periods
#
# Every sublattice of index n is tried; for each one the least number of
# codewords that works is found by a pruned subset enumeration.

# %%
import time

from oldgrid import builtin_lattice, bound_regular, search_min_density
from oldgrid.search import format_result

for name, max_index in [("triangular", 13), ("square", 10), ("hexagonal", 8)]:
    spec = builtin_lattice(name)
    t0 = time.perf_counter()
    res = search_min_density(spec, max_index)
    print(format_result(res))
    print(f"regular bound {bound_regular(spec.regular_degree())}, "
          f"took {time.perf_counter() - t0:.1f} s\n")

# %% Older constructions: 1/3 first shows up at index 6, 6/19 at index 19.
tri = builtin_lattice("triangular")
print(search_min_density(tri, 9).best_density)
print(search_min_density(tri, 0, indices=[19]).best_density)
