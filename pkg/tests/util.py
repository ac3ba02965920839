"""Shared fixtures: frozen search outputs and random pattern generators."""
import random

from oldgrid.lattice import Cell, builtin_lattice
from oldgrid.pattern import PeriodLattice, PeriodicPattern, enumerate_sublattices, parse_pattern

# First 4/13 witness of `search --lattice triangular --max-index 13`.
TRI_4_13 = parse_pattern("""oldpattern 1
lattice triangular
period 1 10 0 13
code 0 0
code 0 2
code 0 5
code 0 7
""")

# A 2-cluster whose eight outside neighbors all see a second cluster.
TWO_CLUSTER = parse_pattern("""oldpattern 1
lattice triangular
period 1 1 0 5
code 0 0
code 0 2
""")

# A pattern with 5-clusters, so R3 fires.
FIVE_CLUSTER = parse_pattern("""oldpattern 1
lattice triangular
period 1 2 0 11
code 0 0
code 0 1
code 0 3
code 0 4
code 0 7
""")


def unimodular(rng):
    """Random 2x2 integer matrix with determinant +-1."""
    a, b, c, d = 1, 0, 0, 1
    for _ in range(rng.randint(0, 4)):
        k = rng.randint(-2, 2)
        if rng.random() < 0.5:
            a, b = a + k * c, b + k * d
        else:
            c, d = c + k * a, d + k * b
    if rng.random() < 0.5:
        a, b, c, d = c, d, a, b
    return a, b, c, d


def rebase(per: PeriodLattice, rng) -> PeriodLattice:
    a, b, c, d = unimodular(rng)
    g1, g2 = per.g1, per.g2
    return PeriodLattice((a * g1[0] + b * g2[0], a * g1[1] + b * g2[1]),
                         (c * g1[0] + d * g2[0], c * g1[1] + d * g2[1]))


def random_pattern(rng, lattice=None, max_index=8):
    if lattice is None:
        lattice = builtin_lattice(rng.choice(["triangular", "square", "hexagonal"]))
    n = rng.randint(1, max_index)
    per = rng.choice(enumerate_sublattices(n))
    cells = [Cell(x, y, s) for s in range(lattice.num_sites) for x, y in per.domain_xy()]
    p = rng.choice([0.35, 0.5, 0.65, 0.8])
    code = [c for c in cells if rng.random() < p]
    return PeriodicPattern(lattice, per, frozenset(code))
