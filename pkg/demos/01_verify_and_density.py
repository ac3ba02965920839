# %% [markdown]
# # Checking a periodic pattern
#
# A pattern is a lattice, a period sublattice and the code residues.  Here is
# a density-4/13 pattern on the triangular grid.

# %%
from oldgrid import builtin_lattice, density, is_old_set, open_code, parse_pattern
from oldgrid.lattice import Cell
from oldgrid.verifier import oracle_radius, window_oracle

p = parse_pattern("""oldpattern 1
lattice triangular
period 1 10 0 13
code 0 0
code 0 2
code 0 5
code 0 7
""")
print("density:", density(p))
print("verdict:", is_old_set(p))

# %% Open codes of a few vertices.  Every one is nonempty and they all differ.
for c in p.domain()[:5]:
    print(tuple(c), sorted(tuple(v) for v in open_code(p, c)))

# %% Break it: drop one codeword and see which condition fails first.
from oldgrid.pattern import PeriodicPattern

broken = PeriodicPattern(p.lattice, p.period, p.code - {Cell(0, 5)})
v = is_old_set(broken)
print("undominated:", v.domination_witness)
print("twins:", v.distinguishing_witness)

# %% The brute-force window check agrees.
print(window_oracle(p, oracle_radius(p)).is_old, window_oracle(broken, oracle_radius(broken)).is_old)
