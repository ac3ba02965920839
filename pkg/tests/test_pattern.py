import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oldgrid.lattice import Cell, builtin_lattice
from oldgrid.pattern import (PatternError, PeriodLattice, PeriodicPattern, density,
                             enumerate_sublattices, hermite_basis, parse_pattern,
                             serialize_pattern)


def sigma(n):
    return sum(d for d in range(1, n + 1) if n % d == 0)


def brute_sublattice_count(n):
    """Index-n sublattices of Z^2 all contain n Z^2; count subgroups of
    (Z/n)^2 with n elements by closing every generator pair."""
    found = set()
    elems = list(itertools.product(range(n), repeat=2))
    for g1, g2 in itertools.product(elems, repeat=2):
        group = {((i * g1[0] + j * g2[0]) % n, (i * g1[1] + j * g2[1]) % n)
                 for i in range(n) for j in range(n)}
        if len(group) == n:
            found.add(frozenset(group))
    return len(found)


@pytest.mark.parametrize("n,count", [(1, 1), (6, 12), (13, 14)])
def test_sublattice_counts(n, count):
    assert sigma(n) == count
    assert len(enumerate_sublattices(n)) == count


@pytest.mark.parametrize("n", [2, 4, 6, 8, 9])
def test_sublattice_count_brute_force(n):
    assert len(enumerate_sublattices(n)) == brute_sublattice_count(n)


def test_sublattices_distinct():
    for n in range(1, 16):
        bases = [p.hnf for p in enumerate_sublattices(n)]
        assert len(set(bases)) == len(bases)
        assert all(PeriodLattice(*h).index == n for h in bases)


small = st.integers(-12, 12)


@given(small, small, small, small)
def test_hermite_basis_generates_same_lattice(a, b, c, d):
    if a * d - b * c == 0:
        with pytest.raises(ValueError):
            hermite_basis((a, b), (c, d))
        return
    (h, k), (z, m) = hermite_basis((a, b), (c, d))
    assert z == 0 and h > 0 and m > 0 and 0 <= k < m
    assert h * m == abs(a * d - b * c)
    per = PeriodLattice((a, b), (c, d))
    # generators lie in the HNF lattice and vice versa
    hnf = PeriodLattice((h, k), (0, m))
    for v in [(a, b), (c, d)]:
        assert hnf.contains(*v)
    for v in [(h, k), (0, m)]:
        assert per.contains(*v)


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-4, 4), st.integers(-4, 4))
def test_reduce_is_class_invariant(x, y, m, n):
    per = PeriodLattice((3, 1), (-2, 5))
    c = Cell(x, y)
    r = per.reduce(c)
    assert per.reduce(r) == r
    assert per.contains(x - r.x, y - r.y)
    shifted = c.shift(m * 3 + n * -2, m * 1 + n * 5)
    assert per.reduce(shifted) == r


def test_reduce_example():
    per = PeriodLattice((13, 0), (0, 1))
    assert per.reduce(Cell(13, 5)) == per.reduce(Cell(0, 5))


def test_domain_is_box():
    per = PeriodLattice((2, 3), (1, -4))  # det -11
    xy = per.domain_xy()
    assert len(xy) == 11
    assert {per.reduce_xy(x, y) for x, y in xy} == set(xy)


@pytest.mark.parametrize("name,det,k,expected", [
    ("triangular", 13, 4, Fraction(4, 13)),
    ("triangular", 19, 6, Fraction(6, 19)),
    ("square", 5, 2, Fraction(2, 5)),
])
def test_density(name, det, k, expected):
    per = PeriodLattice((1, 0), (0, det))
    p = PeriodicPattern.build(name, per, [(0, i) for i in range(k)])
    assert density(p) == expected


def test_density_full_and_empty(lattice):
    per = PeriodLattice((2, 1), (0, 3))
    assert density(PeriodicPattern.full(lattice, per)) == 1
    assert density(PeriodicPattern(lattice, per, frozenset())) == 0


def random_pattern(rng, lattice):
    n = rng.randint(1, 8)
    per = rng.choice(enumerate_sublattices(n))
    cells = [Cell(x, y, s) for s in range(lattice.num_sites) for x, y in per.domain_xy()]
    code = [c for c in cells if rng.random() < 0.5]
    return PeriodicPattern(lattice, per, frozenset(code))


def test_roundtrip(lattice):
    rng = random.Random(7)
    for _ in range(100):
        p = random_pattern(rng, lattice)
        text = serialize_pattern(p)
        q = parse_pattern(text)
        assert q == p
        assert serialize_pattern(q) == text


def test_parse_canonicalizes_and_comments():
    text = """# a comment
oldpattern 1
lattice triangular   # trailing
period 13 0 0 1
code 13 0
"""
    p = parse_pattern(text)
    assert p.code == {Cell(0, 0)}
    assert parse_pattern(text.encode()) == p


@pytest.mark.parametrize("text,line,msg", [
    ("oldpattern 1\nlattice triangular\nperiod 1 0 2 0\n", 3, "determinant"),
    ("oldpattern 1\nlattice triangular\nperiod 5 0 0 1\ncode 0 0\ncode 5 0\n", 5, "duplicate"),
    ("oldpattern 1\nlattice king\n", 2, "unknown lattice"),
    ("oldpattern 2\n", 1, "header"),
    ("oldpattern 1\nlattice square\nperiod 1 0 0 x\n", 3, "integer"),
    ("oldpattern 1\nlattice square\nperiod 1 0 0 1\ncode 1\n", 4, "code takes"),
    ("oldpattern 1\nlattice hexagonal\nperiod 1 0 0 1\ncode 0 0 2\n", 4, "site"),
    ("oldpattern 1\nlattice square\nperiod 1 0 0 1\nfoo\n", 4, "unknown keyword"),
])
def test_parse_errors(text, line, msg):
    with pytest.raises(PatternError, match=msg) as exc:
        parse_pattern(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_parse_missing_sections():
    with pytest.raises(PatternError, match="missing period"):
        parse_pattern("oldpattern 1\nlattice square\n")
    with pytest.raises(PatternError, match="empty"):
        parse_pattern("# nothing\n")


def test_serialize_format():
    p = PeriodicPattern.build("hexagonal", PeriodLattice((1, 0), (0, 2)), [(0, 1, 1), (0, 0, 0)])
    assert serialize_pattern(p) == (
        "oldpattern 1\nlattice hexagonal\nperiod 1 0 0 2\ncode 0 0 0\ncode 0 1 1\n")


def test_with_period_rebasis():
    p = PeriodicPattern.build("triangular", PeriodLattice((1, 10), (0, 13)), [(0, 0), (0, 2)])
    q = p.with_period(PeriodLattice((1, 10), (1, 23)))
    assert q == p and density(q) == density(p)
    with pytest.raises(ValueError):
        p.with_period(PeriodLattice((1, 0), (0, 13)))
