import itertools
import random

import networkx as nx
import pytest

from oldgrid.lattice import Cell, LatticeSpec, ball, builtin_lattice, displacements, neighbors


def window_graph(spec, half):
    """Explicit finite window built from pairwise offset tests, no BFS helpers."""
    g = nx.Graph()
    cells = [Cell(x, y, s) for x in range(-half, half + 1)
             for y in range(-half, half + 1) for s in range(spec.num_sites)]
    g.add_nodes_from(cells)
    for u, v in itertools.combinations(cells, 2):
        if (v.x - u.x, v.y - u.y, v.site) in spec.offsets[u.site]:
            g.add_edge(u, v)
    return g


def test_builtin_degrees():
    assert builtin_lattice("triangular").regular_degree() == 6
    assert builtin_lattice("square").regular_degree() == 4
    assert builtin_lattice("hexagonal").regular_degree() == 3


def test_unknown_lattice():
    with pytest.raises(ValueError, match="unknown lattice"):
        builtin_lattice("king")


def test_triangular_neighbors_of_origin():
    got = neighbors(builtin_lattice("triangular"), Cell(0, 0))
    assert got == [Cell(1, 0), Cell(-1, 0), Cell(0, 1), Cell(0, -1), Cell(1, -1), Cell(-1, 1)]


def test_hexagonal_neighbors_and_bipartite():
    hexa = builtin_lattice("hexagonal")
    assert neighbors(hexa, Cell(0, 0, 0)) == [Cell(0, 0, 1), Cell(-1, 0, 1), Cell(0, -1, 1)]
    for s in range(2):
        assert all(v.site != s for v in neighbors(hexa, Cell(3, -2, s)))


def test_spec_validation():
    with pytest.raises(ValueError, match="asymmetric"):
        LatticeSpec("bad", 1, (((1, 0, 0),),))
    with pytest.raises(ValueError, match="self-loop"):
        LatticeSpec("bad", 1, (((0, 0, 0),),))
    with pytest.raises(ValueError, match="duplicate"):
        LatticeSpec("bad", 1, (((1, 0, 0), (1, 0, 0), (-1, 0, 0)),))


def test_symmetry_and_translation(lattice):
    rng = random.Random(1)
    for _ in range(200):
        u = Cell(rng.randint(-20, 20), rng.randint(-20, 20), rng.randrange(lattice.num_sites))
        nu = neighbors(lattice, u)
        assert len(nu) == lattice.degree(u.site)
        for v in nu:
            assert u in neighbors(lattice, v)
        dx, dy = rng.randint(-9, 9), rng.randint(-9, 9)
        assert neighbors(lattice, u.shift(dx, dy)) == [v.shift(dx, dy) for v in nu]


@pytest.mark.parametrize("r,size", [(0, 1), (1, 7), (2, 19)])
def test_triangular_ball_sizes(r, size):
    assert len(ball(builtin_lattice("triangular"), Cell(0, 0), r)) == size


def test_ball_matches_bfs_oracle(lattice):
    g = window_graph(lattice, 7)
    for r in range(5):
        oracle = nx.single_source_shortest_path_length(g, Cell(0, 0, 0), cutoff=r)
        assert ball(lattice, Cell(0, 0, 0), r) == set(oracle)


def test_ball_strictly_grows(lattice):
    sizes = [len(ball(lattice, Cell(0, 0, 0), r)) for r in range(6)]
    assert all(a < b for a, b in zip(sizes, sizes[1:]))
    assert ball(lattice, Cell(0, 0, 0), 2) <= ball(lattice, Cell(0, 0, 0), 3)


def test_no_twins_in_window(lattice):
    seen = {}
    for x in range(-6, 7):
        for y in range(-6, 7):
            for s in range(lattice.num_sites):
                nb = frozenset(neighbors(lattice, Cell(x, y, s)))
                assert nb not in seen
                seen[nb] = (x, y, s)


def test_displacements_short(lattice):
    d1 = displacements(lattice, 0, 1)
    assert len(d1) == lattice.degree(0)
    d2 = displacements(lattice, 0, 2)
    assert len(d2) == len(ball(lattice, Cell(0, 0, 0), 2)) - 1
