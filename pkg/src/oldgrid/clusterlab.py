"""Connected vertex clusters on single-site lattices.

Shapes are enumerated up to translation or up to the lattice's point
symmetries, and checked for the conditions any isolated component of an
OLD-set must meet on its own: every member has a neighbor inside the
cluster, and no two members see the same set of cluster vertices.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .lattice import LatticeSpec

Point = tuple[int, int]
Shape = tuple[Point, ...]
Matrix = tuple[tuple[int, int], tuple[int, int]]

MODES = ("translation", "isometry")


def _require_single_site(spec: LatticeSpec) -> None:
    if spec.num_sites != 1:
        raise ValueError(f"cluster enumeration needs a single-site lattice, not {spec.name}")


def _steps(spec: LatticeSpec) -> tuple[Point, ...]:
    return tuple((dx, dy) for dx, dy, _ in spec.offsets[0])


@lru_cache(maxsize=None)
def point_group(spec: LatticeSpec) -> tuple[Matrix, ...]:
    """Integer matrices with entries in {-1, 0, 1} and det +-1 that permute
    the neighbor offsets; the first one is the identity."""
    _require_single_site(spec)
    steps = set(_steps(spec))
    found = []
    for a, b, c, d in itertools.product((-1, 0, 1), repeat=4):
        if a * d - b * c not in (1, -1):
            continue
        if {(a * x + b * y, c * x + d * y) for x, y in steps} == steps:
            found.append(((a, b), (c, d)))
    ident = ((1, 0), (0, 1))
    found.sort(key=lambda m: m != ident)
    return tuple(found)


def normalize(cells) -> Shape:
    cells = sorted(cells)
    x0, y0 = cells[0]
    return tuple((x - x0, y - y0) for x, y in cells)


def canonical(spec: LatticeSpec, cells, mode: str = "isometry") -> Shape:
    if mode == "translation":
        return normalize(cells)
    if mode != "isometry":
        raise ValueError(f"unknown mode {mode!r}")
    return min(normalize([(a * x + b * y, c * x + d * y) for x, y in cells])
               for (a, b), (c, d) in point_group(spec))


@dataclass(frozen=True)
class ClusterShape:
    cells: Shape

    @property
    def size(self) -> int:
        return len(self.cells)


def enumerate_clusters(spec: LatticeSpec, t: int, mode: str = "isometry",
                       max_size: int = 10) -> list[ClusterShape]:
    """One canonical shape per class of connected ``t``-vertex clusters,
    sorted by their coordinate tuples."""
    _require_single_site(spec)
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if not 1 <= t <= max_size:
        raise ValueError(f"cluster size must be in [1, {max_size}]")
    steps = _steps(spec)
    level = {((0, 0),)}
    for _ in range(t - 1):
        grown = set()
        for shape in level:
            cells = set(shape)
            for x, y in shape:
                for dx, dy in steps:
                    q = (x + dx, y + dy)
                    if q not in cells:
                        grown.add(canonical(spec, cells | {q}, mode))
        level = grown
    return [ClusterShape(s) for s in sorted(level)]


def _open_codes(spec: LatticeSpec, cells: Shape) -> dict[Point, frozenset[Point]]:
    steps = _steps(spec)
    members = set(cells)
    return {(x, y): frozenset(q for q in ((x + dx, y + dy) for dx, dy in steps)
                              if q in members)
            for x, y in cells}


def _within_two(spec: LatticeSpec, p: Point, q: Point) -> bool:
    steps = _steps(spec)
    d = (q[0] - p[0], q[1] - p[1])
    if d in steps:
        return True
    return any((d[0] - s[0], d[1] - s[1]) in steps for s in steps)


@dataclass(frozen=True)
class Feasibility:
    ok: bool
    isolated: Point | None = None
    twins: tuple[Point, Point, frozenset[Point]] | None = None

    def __bool__(self) -> bool:
        return self.ok


def feasible(spec: LatticeSpec, shape: ClusterShape | Shape) -> Feasibility:
    cells = shape.cells if isinstance(shape, ClusterShape) else tuple(shape)
    codes = _open_codes(spec, cells)
    for p in cells:
        if not codes[p]:
            return Feasibility(False, isolated=p)
    for p, q in itertools.combinations(cells, 2):
        if _within_two(spec, p, q) and codes[p] == codes[q]:
            return Feasibility(False, twins=(p, q, codes[p]))
    return Feasibility(True)


def feasible_clusters(spec: LatticeSpec, t: int, mode: str = "isometry") -> list[ClusterShape]:
    return [s for s in enumerate_clusters(spec, t, mode) if feasible(spec, s)]
