"""Periodic vertex sets: a lattice, a rank-2 period sublattice, and the code
residues modulo that sublattice.

Densities are exact :class:`fractions.Fraction` values.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .lattice import LATTICE_NAMES, Cell, LatticeSpec, builtin_lattice

Vec = tuple[int, int]


def hermite_basis(g1: Vec, g2: Vec) -> tuple[Vec, Vec]:
    """Hermite normal form ``((a, b), (0, d))`` of the row lattice spanned by
    ``g1`` and ``g2``, with ``a, d > 0`` and ``0 <= b < d``."""
    (p, q), (r, s) = g1, g2
    if p * s - q * r == 0:
        raise ValueError("period generators are linearly dependent (det = 0)")
    # Euclid on the first column with unimodular row operations.
    while r != 0:
        m = p // r
        p, q, r, s = r, s, p - m * r, q - m * s
    if p < 0:
        p, q = -p, -q
    if s < 0:
        s = -s
    return (p, q % s), (0, s)


@dataclass(frozen=True)
class PeriodLattice:
    g1: Vec
    g2: Vec
    hnf: tuple[Vec, Vec] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "g1", tuple(int(v) for v in self.g1))
        object.__setattr__(self, "g2", tuple(int(v) for v in self.g2))
        object.__setattr__(self, "hnf", hermite_basis(self.g1, self.g2))

    @classmethod
    def from_hnf(cls, a: int, b: int, d: int) -> "PeriodLattice":
        return cls((a, b), (0, d))

    @property
    def det(self) -> int:
        return self.g1[0] * self.g2[1] - self.g1[1] * self.g2[0]

    @property
    def index(self) -> int:
        return abs(self.det)

    def same_sublattice(self, other: "PeriodLattice") -> bool:
        return self.hnf == other.hnf

    def reduce_xy(self, x: int, y: int) -> Vec:
        (a, b), (_, d) = self.hnf
        q = x // a
        return x - q * a, (y - q * b) % d

    def reduce(self, c: Cell) -> Cell:
        """Canonical representative of ``c`` modulo the period; the site is kept."""
        x, y = self.reduce_xy(c.x, c.y)
        return Cell(x, y, c.site)

    def domain_xy(self) -> list[Vec]:
        """Canonical residues of the translation classes, sorted by (x, y)."""
        (a, _), (_, d) = self.hnf
        return [(x, y) for x in range(a) for y in range(d)]

    def contains(self, x: int, y: int) -> bool:
        return self.reduce_xy(x, y) == (0, 0)

    def __str__(self) -> str:
        return f"({self.g1[0]},{self.g1[1]}),({self.g2[0]},{self.g2[1]})"


def enumerate_sublattices(n: int) -> list[PeriodLattice]:
    """All sublattices of Z^2 of index ``n``, one HNF basis each.

    There are sigma(n) of them, ordered by (a, b) of the first HNF row.
    """
    if n < 1:
        raise ValueError("index must be positive")
    out = []
    for a in range(1, n + 1):
        if n % a:
            continue
        d = n // a
        for b in range(d):
            out.append(PeriodLattice.from_hnf(a, b, d))
    return out


class PatternError(ValueError):
    """Malformed pattern file; ``line`` is 1-based or None."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class PeriodicPattern:
    lattice: LatticeSpec
    period: PeriodLattice
    code: frozenset[Cell]

    def __post_init__(self):
        canon = set()
        for c in self.code:
            c = Cell(*c)
            self.lattice.check_cell(c)
            canon.add(self.period.reduce(c))
        object.__setattr__(self, "code", frozenset(canon))

    @classmethod
    def build(cls, lattice: LatticeSpec | str, period: PeriodLattice,
              code: Iterable[Iterable[int]] = ()) -> "PeriodicPattern":
        """Convenience constructor; raises on two codewords in one residue class."""
        if isinstance(lattice, str):
            lattice = builtin_lattice(lattice)
        seen = set()
        for c in code:
            c = Cell(*c)
            r = period.reduce(c)
            if r in seen:
                raise ValueError(f"duplicate codeword residue {tuple(r)}")
            seen.add(r)
        return cls(lattice, period, frozenset(seen))

    @classmethod
    def full(cls, lattice: LatticeSpec | str, period: PeriodLattice) -> "PeriodicPattern":
        if isinstance(lattice, str):
            lattice = builtin_lattice(lattice)
        return cls(lattice, period, frozenset(domain_cells(lattice, period)))

    @property
    def num_cells(self) -> int:
        return self.period.index * self.lattice.num_sites

    def is_code(self, c: Cell) -> bool:
        return self.period.reduce(c) in self.code

    def sorted_code(self) -> list[Cell]:
        return sorted(self.code, key=Cell.sort_key)

    def domain(self) -> list[Cell]:
        return domain_cells(self.lattice, self.period)

    def translate(self, dx: int, dy: int) -> "PeriodicPattern":
        return PeriodicPattern(self.lattice, self.period,
                               frozenset(c.shift(dx, dy) for c in self.code))

    def with_period(self, period: PeriodLattice) -> "PeriodicPattern":
        """Same vertex set presented with another basis of the same sublattice."""
        if not period.same_sublattice(self.period):
            raise ValueError("period bases generate different sublattices")
        return PeriodicPattern(self.lattice, period, self.code)

    def __eq__(self, other):
        if not isinstance(other, PeriodicPattern):
            return NotImplemented
        return (self.lattice.name == other.lattice.name
                and self.period.same_sublattice(other.period)
                and self.code == other.code)

    def __hash__(self):
        return hash((self.lattice.name, self.period.hnf, self.code))


def domain_cells(lattice: LatticeSpec, period: PeriodLattice) -> list[Cell]:
    """One canonical cell per translation class, sorted by (site, x, y)."""
    return [Cell(x, y, s) for s in range(lattice.num_sites)
            for x, y in period.domain_xy()]


def density(p: PeriodicPattern) -> Fraction:
    return Fraction(len(p.code), p.num_cells)


# --- file format -----------------------------------------------------------

MAGIC = "oldpattern"
VERSION = "1"
_INT = re.compile(r"[+-]?\d+\Z")


def _ints(tokens: list[str], lineno: int) -> list[int]:
    for t in tokens:
        if not _INT.match(t):
            raise PatternError(f"expected integer, got {t!r}", lineno)
    return [int(t) for t in tokens]


def _lines(text: str | bytes) -> Iterator[tuple[int, list[str]]]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            yield lineno, tokens


def parse_pattern(text: str | bytes) -> PeriodicPattern:
    lattice = period = None
    code: dict[Cell, int] = {}
    pending: list[tuple[int, Cell]] = []
    seen_magic = False
    for lineno, tokens in _lines(text):
        key, args = tokens[0], tokens[1:]
        if not seen_magic:
            if key != MAGIC or args != [VERSION]:
                raise PatternError(f"expected '{MAGIC} {VERSION}' header", lineno)
            seen_magic = True
        elif key == "lattice":
            if lattice is not None:
                raise PatternError("repeated lattice line", lineno)
            if len(args) != 1:
                raise PatternError("lattice takes one name", lineno)
            if args[0] not in LATTICE_NAMES:
                raise PatternError(f"unknown lattice {args[0]!r}", lineno)
            lattice = builtin_lattice(args[0])
        elif key == "period":
            if period is not None:
                raise PatternError("repeated period line", lineno)
            if len(args) != 4:
                raise PatternError("period takes four integers", lineno)
            a, b, c, d = _ints(args, lineno)
            if a * d - b * c == 0:
                raise PatternError("period determinant is zero", lineno)
            period = PeriodLattice((a, b), (c, d))
        elif key == "code":
            if len(args) not in (2, 3):
                raise PatternError("code takes x y [site]", lineno)
            pending.append((lineno, Cell(*_ints(args, lineno))))
        else:
            raise PatternError(f"unknown keyword {key!r}", lineno)
    if not seen_magic:
        raise PatternError("empty pattern file")
    if lattice is None:
        raise PatternError("missing lattice line")
    if period is None:
        raise PatternError("missing period line")
    for lineno, c in pending:
        if not 0 <= c.site < lattice.num_sites:
            raise PatternError(f"site {c.site} out of range", lineno)
        r = period.reduce(c)
        if r in code:
            raise PatternError(
                f"duplicate codeword residue {tuple(r)} (also line {code[r]})", lineno)
        code[r] = lineno
    return PeriodicPattern(lattice, period, frozenset(code))


def serialize_pattern(p: PeriodicPattern) -> str:
    (a, b), (c, d) = p.period.g1, p.period.g2
    out = [f"{MAGIC} {VERSION}", f"lattice {p.lattice.name}", f"period {a} {b} {c} {d}"]
    multi = p.lattice.num_sites > 1
    for cell in p.sorted_code():
        out.append(f"code {cell.x} {cell.y} {cell.site}" if multi
                   else f"code {cell.x} {cell.y}")
    return "\n".join(out) + "\n"
