"""Infinite grids as translation-periodic graphs.

A lattice has ``num_sites`` vertices per unit cell.  Vertex ``(x, y, s)`` is
adjacent to ``(x + dx, y + dy, t)`` for every ``(dx, dy, t)`` in
``offsets[s]``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple


class Cell(NamedTuple):
    x: int
    y: int
    site: int = 0

    def shift(self, dx: int, dy: int) -> "Cell":
        return Cell(self.x + dx, self.y + dy, self.site)

    def sort_key(self) -> tuple[int, int, int]:
        return (self.site, self.x, self.y)


Offset = tuple[int, int, int]


@dataclass(frozen=True)
class LatticeSpec:
    name: str
    num_sites: int
    offsets: tuple[tuple[Offset, ...], ...]

    def __post_init__(self):
        if self.num_sites < 1 or len(self.offsets) != self.num_sites:
            raise ValueError("offset table must have one row per site")
        for s, row in enumerate(self.offsets):
            if len(set(row)) != len(row):
                raise ValueError(f"duplicate offset at site {s}")
            for dx, dy, t in row:
                if not 0 <= t < self.num_sites:
                    raise ValueError(f"offset {(dx, dy, t)} names unknown site")
                if (dx, dy, t) == (0, 0, s):
                    raise ValueError(f"self-loop at site {s}")
                if (-dx, -dy, s) not in self.offsets[t]:
                    raise ValueError(f"asymmetric offset {(dx, dy, t)} at site {s}")

    def degree(self, site: int = 0) -> int:
        return len(self.offsets[site])

    def regular_degree(self) -> int | None:
        """Common degree of all sites, or None when the lattice is not regular."""
        degrees = {len(row) for row in self.offsets}
        return degrees.pop() if len(degrees) == 1 else None

    def check_cell(self, c: Cell) -> None:
        if not 0 <= c.site < self.num_sites:
            raise ValueError(f"site {c.site} out of range for {self.name}")


_TRIANGULAR = LatticeSpec(
    "triangular", 1,
    (((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (1, -1, 0), (-1, 1, 0)),),
)
_SQUARE = LatticeSpec(
    "square", 1,
    (((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)),),
)
_HEXAGONAL = LatticeSpec(
    "hexagonal", 2,
    (
        ((0, 0, 1), (-1, 0, 1), (0, -1, 1)),
        ((0, 0, 0), (1, 0, 0), (0, 1, 0)),
    ),
)

BUILTIN = {spec.name: spec for spec in (_TRIANGULAR, _SQUARE, _HEXAGONAL)}
LATTICE_NAMES = tuple(BUILTIN)


def builtin_lattice(name: str) -> LatticeSpec:
    try:
        return BUILTIN[name]
    except KeyError:
        raise ValueError(
            f"unknown lattice {name!r}; expected one of {', '.join(LATTICE_NAMES)}"
        ) from None


def neighbors(spec: LatticeSpec, c: Cell) -> list[Cell]:
    """Open neighborhood of ``c`` in offset-table order."""
    return [Cell(c.x + dx, c.y + dy, t) for dx, dy, t in spec.offsets[c.site]]


def ball(spec: LatticeSpec, c: Cell, r: int) -> set[Cell]:
    """Closed ball of graph radius ``r`` around ``c``."""
    return set(distances(spec, c, r))


def distances(spec: LatticeSpec, c: Cell, r: int) -> dict[Cell, int]:
    """BFS distances from ``c`` to every cell within radius ``r``."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    dist = {c: 0}
    queue = deque([c])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if du == r:
            continue
        for v in neighbors(spec, u):
            if v not in dist:
                dist[v] = du + 1
                queue.append(v)
    return dist


def displacements(spec: LatticeSpec, site: int, r: int) -> list[Offset]:
    """Nonzero displacements ``(dx, dy, target_site)`` of graph distance <= r
    from a vertex on ``site``, sorted by (distance, dx, dy, site)."""
    dist = distances(spec, Cell(0, 0, site), r)
    out = [(d, v.x, v.y, v.site) for v, d in dist.items() if d > 0]
    out.sort()
    return [(x, y, s) for _, x, y, s in out]
