"""Exhaustive minimum-density search over periodic patterns.

For a fixed period every OLD condition is a hitting constraint on the code
residues: domination of ``u`` needs a code vertex among the residues of
N(u), and distinguishing ``u`` from ``v`` (distance <= 2) needs one among the
residues of the symmetric difference N(u) ^ N(v).  Constraints and cells are
bit masks; subsets are enumerated by depth-first include/exclude with a
deadline prune (a constraint whose last member has been passed over must
already be hit).
"""
from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .lattice import Cell, LatticeSpec, neighbors
from .pattern import (PeriodLattice, PeriodicPattern, domain_cells,
                      enumerate_sublattices, serialize_pattern)
from .verifier import _short_displacements, is_old_set

log = logging.getLogger(__name__)

DEFAULT_MAX_CELLS = 40


class SearchGuardError(ValueError):
    """Period too large for exhaustive search without an explicit override."""


def bound_regular(r: int) -> Fraction:
    """Density lower bound 2/(r+1) for OLD-sets in r-regular graphs."""
    if r < 1:
        raise ValueError("degree must be positive")
    return Fraction(2, r + 1)


def lattice_bound(spec: LatticeSpec) -> Fraction:
    r = spec.regular_degree()
    return bound_regular(r) if r else Fraction(0)


def constraint_masks(spec: LatticeSpec, period: PeriodLattice) -> tuple[list[Cell], list[int]]:
    """Domain cells and the hitting constraints over their indices.

    Constraints are deduplicated and those containing another are dropped.
    """
    cells = domain_cells(spec, period)
    index = {c: i for i, c in enumerate(cells)}

    def mask(vs) -> int:
        m = 0
        for v in vs:
            m |= 1 << index[period.reduce(v)]
        return m

    found = set()
    for u in cells:
        nu = set(neighbors(spec, u))
        found.add(mask(nu))
        for dx, dy, s in _short_displacements(spec, u.site):
            nv = set(neighbors(spec, Cell(u.x + dx, u.y + dy, s)))
            found.add(mask(nu ^ nv))
    ordered = sorted(found, key=lambda m: (m.bit_count() if hasattr(m, "bit_count")
                                           else bin(m).count("1"), m))
    minimal: list[int] = []
    for m in ordered:
        if not any(q & m == q for q in minimal):
            minimal.append(m)
    return cells, minimal


def hitting_sets(n: int, constraints: list[int], k: int):
    """Yield every k-subset of range(n) (as a bit mask) meeting all constraints."""
    m = len(constraints)
    full = (1 << m) - 1
    hits = [0] * n
    deadline = [0] * n
    for j, c in enumerate(constraints):
        for i in range(n):
            if c >> i & 1:
                hits[i] |= 1 << j
        deadline[c.bit_length() - 1] |= 1 << j

    # iterative DFS; stack holds (i, left, sat, chosen)
    stack = [(0, k, 0, 0)]
    while stack:
        i, left, sat, chosen = stack.pop()
        if left == 0:
            if sat == full:
                yield chosen
            continue
        if n - i < left:
            continue
        # exclude i (pushed first so the include branch is explored first)
        if not deadline[i] & ~sat:
            stack.append((i + 1, left, sat, chosen))
        stack.append((i + 1, left - 1, sat | hits[i], chosen | 1 << i))


@dataclass
class IndexResult:
    """Outcome for one period: least code size (None if pruned) and witnesses."""
    period: PeriodLattice
    cells: int
    k: int | None
    witnesses: list[PeriodicPattern] = field(default_factory=list)
    candidates: int = 0
    levels_tried: int = 0

    @property
    def density(self) -> Fraction | None:
        return None if self.k is None else Fraction(self.k, self.cells)


def search_index(spec: LatticeSpec, period: PeriodLattice, *,
                 cutoff: Fraction | None = None,
                 limit: int | None = None,
                 start_k: int | None = None,
                 max_cells: int = DEFAULT_MAX_CELLS) -> IndexResult:
    """Least k such that some k codewords modulo ``period`` form an OLD-set,
    with all witnesses of that size (at most ``limit`` if given).

    Stops early (``k = None``) once k / cells would exceed ``cutoff``.
    """
    ncells = period.index * spec.num_sites
    if ncells > max_cells:
        raise SearchGuardError(
            f"period {period} has {ncells} cells, above the limit {max_cells}")
    cells, constraints = constraint_masks(spec, period)
    res = IndexResult(period, ncells, None)
    k = math.ceil(lattice_bound(spec) * ncells)
    if start_k is not None:
        k = max(k, start_k)
    while k <= ncells:
        if cutoff is not None and Fraction(k, ncells) > cutoff:
            break
        res.levels_tried += 1
        found = []
        for chosen in hitting_sets(ncells, constraints, k):
            res.candidates += 1
            code = frozenset(c for i, c in enumerate(cells) if chosen >> i & 1)
            found.append(PeriodicPattern(spec, period, code))
            if limit is not None and len(found) >= limit:
                break
        if found:
            for p in found:
                if not is_old_set(p):
                    raise AssertionError(f"search produced a non-OLD pattern:\n{serialize_pattern(p)}")
            res.k = k
            res.witnesses = sorted(found, key=serialize_pattern)
            break
        k += 1
    return res


# --- lattice automorphisms, for optional period deduplication -----------------

@lru_cache(maxsize=None)
def automorphisms(spec: LatticeSpec) -> tuple[tuple[tuple[int, int, int, int], tuple[int, ...]], ...]:
    """Linear parts and site permutations of the lattice's point symmetries,
    as ``((a, b, c, d), perm)`` acting by (x, y) -> (a x + b y, c x + d y)."""
    sites = range(spec.num_sites)
    found = []
    shifts = list(itertools.product((-1, 0, 1), repeat=2))
    for a, b, c, d in itertools.product((-1, 0, 1), repeat=4):
        if a * d - b * c not in (1, -1):
            continue
        for perm in itertools.permutations(sites):
            for taus in itertools.product(shifts, repeat=spec.num_sites - 1):
                tau = [(0, 0), *taus]
                ok = all(
                    (a * dx + b * dy + tau[t][0] - tau[s][0],
                     c * dx + d * dy + tau[t][1] - tau[s][1], perm[t])
                    in spec.offsets[perm[s]]
                    for s in sites for dx, dy, t in spec.offsets[s])
                if ok:
                    found.append(((a, b, c, d), perm))
                    break
    return tuple(found)


def period_orbit_key(spec: LatticeSpec, period: PeriodLattice) -> tuple:
    keys = []
    for (a, b, c, d), _ in automorphisms(spec):
        g1 = (a * period.g1[0] + b * period.g1[1], c * period.g1[0] + d * period.g1[1])
        g2 = (a * period.g2[0] + b * period.g2[1], c * period.g2[0] + d * period.g2[1])
        keys.append(PeriodLattice(g1, g2).hnf)
    return min(keys)


# --- sweep over all periods -------------------------------------------------------

@dataclass
class IndexRow:
    index: int
    periods: int
    min_density: Fraction | None  # None: nothing at density <= cutoff
    cutoff: Fraction | None


@dataclass
class SearchResult:
    lattice: LatticeSpec
    best_density: Fraction | None
    witnesses: list[PeriodicPattern]
    table: dict[int, IndexRow]
    per_period: list[IndexResult]
    candidates: int = 0
    pruned: int = 0

    def witnesses_at(self, index: int) -> list[PeriodicPattern]:
        return [w for w in self.witnesses if w.period.index == index]


def _run(args):
    spec, period, kwargs = args
    return search_index(spec, period, **kwargs)


def search_min_density(spec: LatticeSpec, max_index: int, *,
                       indices=None, threads: int = 1, symmetry: bool = False,
                       prune: bool = True,
                       max_cells: int = DEFAULT_MAX_CELLS) -> SearchResult:
    """Minimum OLD density over every period sublattice of index <= max_index
    (or exactly the given ``indices``).

    Periods of one index share the incumbent known after all smaller indices,
    so the result does not depend on ``threads``.  Ties with the incumbent are
    kept, so every optimal witness is reported.
    """
    if indices is None:
        if max_index < 1:
            raise ValueError("max_index must be positive")
        indices = range(1, max_index + 1)
    indices = sorted(set(indices))
    best: Fraction | None = None
    table: dict[int, IndexRow] = {}
    per_period: list[IndexResult] = []
    pool = ProcessPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for n in indices:
            periods = enumerate_sublattices(n)
            if symmetry:
                seen = set()
                kept = []
                for per in periods:
                    key = period_orbit_key(spec, per)
                    if key not in seen:
                        seen.add(key)
                        kept.append(per)
                periods = kept
            cutoff = best if prune else None
            run = (lambda jobs: list(pool.map(_run, jobs))) if pool else \
                (lambda jobs: [_run(j) for j in jobs])
            # first pass: least k per period from the first hit only
            results = run([(spec, per, dict(cutoff=cutoff, limit=1, max_cells=max_cells))
                           for per in periods])
            dens = [r.density for r in results if r.k is not None]
            low = min(dens) if dens else None
            table[n] = IndexRow(n, len(periods), low, cutoff)
            # second pass: every witness, only where the index minimum is reached
            redo = [i for i, r in enumerate(results) if r.k is not None and r.density == low]
            full = run([(spec, results[i].period,
                         dict(start_k=results[i].k, cutoff=low, max_cells=max_cells))
                        for i in redo])
            for i, r in zip(redo, full):
                r.candidates += results[i].candidates
                r.levels_tried += results[i].levels_tried
                results[i] = r
            per_period.extend(results)
            if low is not None and (best is None or low < best):
                best = low
            log.info("index %d: %d periods, min %s", n, len(periods), low)
    finally:
        if pool:
            pool.shutdown()
    witnesses = [w for r in per_period if r.density is not None and r.density == best
                 for w in r.witnesses]
    witnesses.sort(key=lambda w: (w.period.index, serialize_pattern(w)))
    return SearchResult(
        lattice=spec,
        best_density=best,
        witnesses=witnesses,
        table=table,
        per_period=per_period,
        candidates=sum(r.candidates for r in per_period),
        pruned=sum(1 for r in per_period if r.k is None),
    )


def format_result(res: SearchResult, machine: bool = False) -> str:
    if machine:
        lines = [f"lattice={res.lattice.name}", f"best_density={res.best_density}"]
        for row in res.table.values():
            lines.append(f"index={row.index} periods={row.periods} "
                         f"min_density={row.min_density if row.min_density is not None else 'none'} "
                         f"cutoff={row.cutoff if row.cutoff is not None else 'none'}")
        lines.append(f"witnesses={len(res.witnesses)} candidates={res.candidates} "
                     f"pruned_periods={res.pruned}")
        return "\n".join(lines) + "\n"
    lines = [f"lattice {res.lattice.name}", "index  periods  min density"]
    for row in res.table.values():
        if row.min_density is not None:
            cell = str(row.min_density)
        else:
            cell = f"> {row.cutoff}" if row.cutoff is not None else "-"
        lines.append(f"{row.index:5d}  {row.periods:7d}  {cell}")
    lines.append(f"best density {res.best_density}")
    by_index = sorted({w.period.index for w in res.witnesses})
    lines.append(f"{len(res.witnesses)} optimal witnesses at index "
                 f"{', '.join(map(str, by_index)) or '-'}")
    lines.append(f"{res.candidates} candidates verified, {res.pruned} periods pruned")
    return "\n".join(lines) + "\n"
