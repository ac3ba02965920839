# %% [markdown]
# # Drawing patterns
#
# Writes SVG files next to this script: the best triangular pattern and a
# sheet of feasible 4-clusters.

# %%
from pathlib import Path

from oldgrid import builtin_lattice, enumerate_clusters, feasible, search_min_density
from oldgrid.render import render_pattern, render_shapes

here = Path(__file__).resolve().parent
tri = builtin_lattice("triangular")

best = search_min_density(tri, 13).witnesses[0]
(here / "triangular_4_13.svg").write_text(render_pattern(best, tiles=3))

shapes = [s.cells for s in enumerate_clusters(tri, 4) if feasible(tri, s)]
(here / "feasible_4_clusters.svg").write_text(render_shapes(tri, shapes))
print("wrote", here / "triangular_4_13.svg", "and", here / "feasible_4_clusters.svg")
