import itertools
from fractions import Fraction

import pytest

from oldgrid.lattice import builtin_lattice
from oldgrid.pattern import PeriodLattice, PeriodicPattern, density, enumerate_sublattices
from oldgrid.search import (SearchGuardError, automorphisms, bound_regular, constraint_masks,
                            format_result, hitting_sets, search_index, search_min_density)
from oldgrid.verifier import is_old_set

TRI = builtin_lattice("triangular")
SQ = builtin_lattice("square")
HEX = builtin_lattice("hexagonal")


@pytest.mark.parametrize("r,b", [(6, Fraction(2, 7)), (4, Fraction(2, 5)),
                                 (3, Fraction(1, 2)), (1, Fraction(1))])
def test_bound_regular(r, b):
    assert bound_regular(r) == b


def test_bound_regular_rejects_zero():
    with pytest.raises(ValueError):
        bound_regular(0)


def brute_old_sets(spec, per, k):
    cells = PeriodicPattern.full(spec, per).domain()
    out = set()
    for combo in itertools.combinations(cells, k):
        p = PeriodicPattern(spec, per, frozenset(combo))
        if is_old_set(p):
            out.add(p.code)
    return out


@pytest.mark.parametrize("spec,hnf,k", [
    (TRI, (1, 2, 7), 3), (TRI, (1, 2, 7), 4), (TRI, (2, 1, 3), 2), (TRI, (1, 5, 13), 4),
    (SQ, (1, 2, 5), 2), (SQ, (2, 0, 3), 3), (HEX, (2, 1, 2), 4), (HEX, (1, 1, 3), 3),
])
def test_hitting_sets_match_brute_force(spec, hnf, k):
    per = PeriodLattice.from_hnf(*hnf)
    cells, cons = constraint_masks(spec, per)
    got = {frozenset(c for i, c in enumerate(cells) if m >> i & 1)
           for m in hitting_sets(len(cells), cons, k)}
    assert got == brute_old_sets(spec, per, k)


def test_index_one():
    r = search_index(TRI, PeriodLattice((1, 0), (0, 1)))
    assert r.k == 1 and r.density == 1


def test_index_13_periods_admitting_optimum():
    good = [p.hnf[0][1] for p in enumerate_sublattices(13) if search_index(TRI, p).k == 4]
    assert good == [2, 4, 5, 7, 8, 10]


def test_square_index_5():
    r = search_index(SQ, PeriodLattice((1, 0), (0, 5)))
    assert r.k == 2 and r.density == Fraction(2, 5)
    assert all(is_old_set(w) for w in r.witnesses)


def test_guard():
    with pytest.raises(SearchGuardError):
        search_index(HEX, PeriodLattice((1, 0), (0, 21)))
    r = search_index(TRI, PeriodLattice((1, 0), (0, 2)), max_cells=1 << 10)
    assert r.k is not None


def test_cutoff_prunes():
    r = search_index(TRI, PeriodLattice((1, 0), (0, 13)), cutoff=Fraction(4, 13))
    assert r.k is None


def test_limit():
    r = search_index(TRI, PeriodLattice((1, 2), (0, 13)), limit=1)
    assert r.k == 4 and len(r.witnesses) == 1


@pytest.fixture(scope="module")
def tri9():
    return search_min_density(TRI, 9)


def test_sweep_invariants(tri9):
    assert tri9.best_density == Fraction(1, 3)
    assert tri9.best_density >= bound_regular(6)
    assert tri9.best_density == min(r.min_density for r in tri9.table.values()
                                    if r.min_density is not None)
    for w in tri9.witnesses:
        assert is_old_set(w)
        assert density(w) == tri9.table[w.period.index].min_density


def test_threads_do_not_change_result(tri9):
    other = search_min_density(TRI, 9, threads=2)
    assert other.best_density == tri9.best_density
    assert other.witnesses == tri9.witnesses
    assert format_result(other) == format_result(tri9)


def test_unpruned_table_refinement():
    res = search_min_density(TRI, 12, prune=False)
    tab = {n: row.min_density for n, row in res.table.items()}
    for n in tab:
        for m in range(2, 13):
            if n * m in tab:
                assert tab[n * m] <= tab[n]
    assert tab[7] == Fraction(3, 7) and tab[11] == Fraction(4, 11)


def test_automorphism_groups():
    assert len(automorphisms(TRI)) == 12
    assert len(automorphisms(SQ)) == 8
    assert len(automorphisms(HEX)) == 12


def test_symmetry_flag_same_optimum():
    a = search_min_density(HEX, 6, symmetry=True)
    b = search_min_density(HEX, 6)
    assert a.best_density == b.best_density == Fraction(1, 2)
    assert sum(r.periods for r in a.table.values()) < sum(r.periods for r in b.table.values())


def test_report_has_only_fractions(tri9):
    text = format_result(tri9) + format_result(tri9, machine=True)
    assert "1/3" in text and "0.3" not in text
