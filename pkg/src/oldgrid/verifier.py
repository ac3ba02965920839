"""Exact OLD-set verification for periodic patterns.

Two vertices at graph distance >= 3 have disjoint open neighborhoods, so once
every vertex is dominated their codes differ automatically.  Checking every
domain cell against all displacements of length <= 2 is therefore exact on
the infinite grid.  All lookups are in absolute coordinates with residue
membership tests, so tiny or skewed periods need no special handling.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .lattice import Cell, LatticeSpec, displacements, neighbors
from .pattern import PeriodicPattern

Code = frozenset[Cell]


@dataclass(frozen=True)
class Verdict:
    is_old: bool
    domination_witness: Cell | None = None
    # (u, v, shared open code)
    distinguishing_witness: tuple[Cell, Cell, Code] | None = None

    def __bool__(self) -> bool:
        return self.is_old


def open_code(p: PeriodicPattern, c: Cell) -> Code:
    return frozenset(v for v in neighbors(p.lattice, c) if p.is_code(v))


def check_domination(p: PeriodicPattern) -> Cell | None:
    """None if every vertex has a code neighbor, else the least undominated
    domain cell in (site, x, y) order."""
    for u in p.domain():
        if not any(p.is_code(v) for v in neighbors(p.lattice, u)):
            return u
    return None


@lru_cache(maxsize=None)
def _short_displacements(spec: LatticeSpec, site: int):
    return tuple(displacements(spec, site, 2))


def check_distinguishing(p: PeriodicPattern) -> tuple[Cell, Cell, Code] | None:
    """None if no two vertices within distance 2 share an open code.

    Otherwise returns ``(u, v, code)`` with ``u`` the least domain cell and
    ``v - u`` the first displacement (by length, then coordinates) at fault.
    """
    for u in p.domain():
        cu = open_code(p, u)
        for dx, dy, s in _short_displacements(p.lattice, u.site):
            v = Cell(u.x + dx, u.y + dy, s)
            if open_code(p, v) == cu:
                return u, v, cu
    return None


def is_old_set(p: PeriodicPattern) -> Verdict:
    dom = check_domination(p)
    dist = check_distinguishing(p)
    return Verdict(dom is None and dist is None, dom, dist)


# --- brute-force window oracle (independent of the locality argument) --------

@lru_cache(maxsize=32)
def _window(spec: LatticeSpec, radius: int):
    dist = {}
    frontier = [Cell(0, 0, 0)]
    dist[frontier[0]] = 0
    for r in range(1, radius + 1):
        nxt = []
        for u in frontier:
            for v in neighbors(spec, u):
                if v not in dist:
                    dist[v] = r
                    nxt.append(v)
        frontier = nxt
    cells = sorted(dist, key=Cell.sort_key)
    adj = {u: tuple(v for v in neighbors(spec, u) if v in dist) for u in cells}
    interior = [u for u in cells if dist[u] <= radius - 2]
    return adj, interior


def period_extent(p: PeriodicPattern) -> int:
    (a, _), (_, d) = p.period.hnf
    return max(a, d)


def window_oracle(p: PeriodicPattern, radius: int) -> Verdict:
    """Materialize the radius-ball around the origin as an explicit finite
    graph and brute-force both OLD conditions on its interior vertices
    (those whose distance-2 ball fits inside the window).  All interior pairs
    are compared, not only nearby ones."""
    if radius < 4:
        raise ValueError("window radius must be at least 4")
    adj, interior = _window(p.lattice, radius)
    in_code = {u: p.is_code(u) for u in adj}
    dom_witness = None
    by_code: dict[Code, Cell] = {}
    dist_witness = None
    for u in interior:
        code = frozenset(v for v in adj[u] if in_code[v])
        if not code and dom_witness is None:
            dom_witness = u
        if dist_witness is None:
            if code in by_code:
                dist_witness = (by_code[code], u, code)
            else:
                by_code[code] = u
    return Verdict(dom_witness is None and dist_witness is None,
                   dom_witness, dist_witness)


def oracle_radius(p: PeriodicPattern) -> int:
    """Window radius large enough for the oracle to see every residue class
    together with its distance-2 surroundings."""
    return max(4, 4 * period_extent(p))


def recheck(p: PeriodicPattern, verdict: Verdict) -> bool:
    """True if every witness in ``verdict`` really violates its condition."""
    w = verdict.domination_witness
    if w is not None and open_code(p, w):
        return False
    pair = verdict.distinguishing_witness
    if pair is not None:
        u, v, code = pair
        if u == v or open_code(p, u) != code or open_code(p, v) != code:
            return False
    return verdict.is_old == (w is None and pair is None)


__all__ = [
    "Verdict", "open_code", "check_domination", "check_distinguishing",
    "is_old_set", "window_oracle", "oracle_radius", "recheck",
]
