"""Weight redistribution on concrete periodic patterns.

Code vertices start with weight 1, all others with 0.  Charge then moves by
three rules:

* R1/R2: a non-code vertex adjacent to ``k`` clusters takes ``4/(13k)`` from
  each, split evenly over the ``l`` members of that cluster it touches.
* R3 (clusters of size >= 5 only): a 1-vertex outside any 1,2-couple gets
  7/39 from its neighbor; a poor 2-vertex outside a poor couple gets 1/39 from
  each non-poor cluster neighbor; a poor couple gets 2/39 from the neighbor
  of its 2-vertex.

Weights are periodic, so the ledger stores them per canonical residue.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .lattice import Cell, neighbors
from .pattern import PeriodicPattern

TARGET = Fraction(4, 13)
BUDGET = 1 - TARGET  # 9/13
R3_LEAF = Fraction(7, 39)
R3_POOR = Fraction(1, 39)
R3_COUPLE = Fraction(2, 39)


class InfiniteCluster(ValueError):
    """A connected component of the code wraps around the period."""


class UndominatedCell(ValueError):
    """A non-code vertex has no code neighbor."""


@dataclass(frozen=True)
class Cluster:
    id: int
    members: frozenset[Cell]  # one lifted, connected copy

    @property
    def size(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list[Cell]:
        return sorted(self.members, key=Cell.sort_key)


@dataclass(frozen=True)
class VertexClass:
    degree: int
    is_corner2: bool = False
    is_poor2: bool = False
    couple_partner: Cell | None = None
    in_poor_couple: bool = False


class ClusterMap:
    """Connected components of a periodic code, one lifted copy per class.

    ``locate(c)`` maps any absolute code cell to ``(cluster_id, shift)`` where
    ``shift`` is the translation taking the stored copy to the one holding c.
    """

    def __init__(self, p: PeriodicPattern):
        self.pattern = p
        parent: dict[Cell, Cell] = {u: u for u in p.code}
        # lift[u] = translation from the parent's copy frame to u's copy
        rel: dict[Cell, tuple[int, int]] = {u: (0, 0) for u in p.code}

        def find(u):
            path = []
            while parent[u] != u:
                path.append(u)
                u = parent[u]
            root = u
            acc = (0, 0)
            for v in reversed(path):
                dx, dy = rel[v]
                acc = (acc[0] + dx, acc[1] + dy)
                rel[v] = acc
                parent[v] = root
            return root

        for u in sorted(p.code, key=Cell.sort_key):
            for w in neighbors(p.lattice, u):
                rw = p.period.reduce(w)
                if rw not in parent:
                    continue
                t = (w.x - rw.x, w.y - rw.y)
                ru, rr = find(u), find(rw)
                du, dr = rel[u], rel[rw]
                want = (t[0] + du[0], t[1] + du[1])
                if ru == rr:
                    if dr != want:
                        raise InfiniteCluster(
                            f"component through {tuple(u)} wraps the period")
                    continue
                parent[rr] = ru
                rel[rr] = (want[0] - dr[0], want[1] - dr[1])

        groups: dict[Cell, list[Cell]] = defaultdict(list)
        for u in p.code:
            find(u)
            groups[parent[u]].append(u)
        clusters = []
        for members in groups.values():
            members.sort(key=Cell.sort_key)
            ax, ay = rel[members[0]]
            lifted = {u: Cell(u.x + rel[u][0] - ax, u.y + rel[u][1] - ay, u.site)
                      for u in members}
            clusters.append(lifted)
        clusters.sort(key=lambda lifted: min(lifted.values(), key=Cell.sort_key).sort_key())
        self.clusters = [Cluster(i, frozenset(lifted.values()))
                         for i, lifted in enumerate(clusters)]
        self._where: dict[Cell, tuple[int, Cell]] = {}
        for i, lifted in enumerate(clusters):
            for r, c in lifted.items():
                self._where[r] = (i, c)

    def locate(self, c: Cell) -> tuple[int, tuple[int, int]]:
        r = self.pattern.period.reduce(c)
        i, lifted = self._where[r]
        return i, (c.x - lifted.x, c.y - lifted.y)


def find_clusters(p: PeriodicPattern) -> list[Cluster]:
    return ClusterMap(p).clusters


def common_neighbors(p: PeriodicPattern, a: Cell, b: Cell) -> set[Cell]:
    return set(neighbors(p.lattice, a)) & set(neighbors(p.lattice, b))


def classify(p: PeriodicPattern, cl: Cluster) -> dict[Cell, VertexClass]:
    members = cl.members
    nbrs = {u: [v for v in neighbors(p.lattice, u) if v in members] for u in members}
    deg = {u: len(vs) for u, vs in nbrs.items()}
    corner = {u: deg[u] == 2 and len(common_neighbors(p, *nbrs[u])) >= 2
              for u in members}
    poor = {u: corner[u] and not any(deg[v] >= 3 or corner[v] for v in nbrs[u])
            for u in members}
    partner: dict[Cell, Cell] = {}
    for u in cl.sorted_members():
        if deg[u] != 1:
            continue
        v = nbrs[u][0]
        if deg[v] == 2:
            partner.setdefault(u, v)
            partner.setdefault(v, u)
    out = {}
    for u in members:
        mate = partner.get(u)
        two = u if deg[u] == 2 else mate
        out[u] = VertexClass(
            degree=deg[u],
            is_corner2=corner[u],
            is_poor2=poor[u],
            couple_partner=mate,
            in_poor_couple=mate is not None and poor[two],
        )
    return out


@dataclass(frozen=True)
class Transfer:
    donor: Cell
    recipient: Cell | tuple[Cell, Cell]
    amount: Fraction
    rule: str


@dataclass
class ChargeLedger:
    pattern: PeriodicPattern
    clusters: list[Cluster]
    classes: dict[int, dict[Cell, VertexClass]]
    transfers: list[Transfer] = field(default_factory=list)
    initial: dict[Cell, Fraction] = field(default_factory=dict)
    paid: dict[Cell, Fraction] = field(default_factory=dict)
    received: dict[Cell, Fraction] = field(default_factory=dict)

    @property
    def final(self) -> dict[Cell, Fraction]:
        return {c: self.initial[c] - self.paid[c] + self.received[c] for c in self.initial}

    def weight(self, c: Cell) -> Fraction:
        r = self.pattern.period.reduce(c)
        return self.initial[r] - self.paid[r] + self.received[r]

    def cluster_total(self, cl: Cluster) -> Fraction:
        return sum((self.weight(u) for u in cl.members), Fraction(0))

    def _move(self, donor: Cell, recipients: tuple[Cell, ...], amount: Fraction, rule: str):
        red = self.pattern.period.reduce
        self.transfers.append(Transfer(
            donor, recipients[0] if len(recipients) == 1 else recipients, amount, rule))
        self.paid[red(donor)] += amount
        share = amount / len(recipients)
        for r in recipients:
            self.received[red(r)] += share


def apply_rules(p: PeriodicPattern) -> ChargeLedger:
    cmap = ClusterMap(p)
    clusters = cmap.clusters
    domain = p.domain()
    ledger = ChargeLedger(
        pattern=p,
        clusters=clusters,
        classes={cl.id: classify(p, cl) for cl in clusters},
        initial={c: Fraction(int(c in p.code)) for c in domain},
        paid={c: Fraction(0) for c in domain},
        received={c: Fraction(0) for c in domain},
    )

    for w in domain:
        if w in p.code:
            continue
        touching: dict[tuple, list[Cell]] = {}
        for v in neighbors(p.lattice, w):
            if p.is_code(v):
                i, shift = cmap.locate(v)
                touching.setdefault((i, shift), []).append(v)
        if not touching:
            raise UndominatedCell(f"vertex {tuple(w)} has no code neighbor")
        k = len(touching)
        for members in touching.values():
            l = len(members)
            for m in members:
                ledger._move(m, (w,), Fraction(4, 13 * k * l), "R1" if l == 1 else "R2")

    for cl in clusters:
        if cl.size < 5:
            continue
        cls = ledger.classes[cl.id]
        nbrs = {u: [v for v in neighbors(p.lattice, u) if v in cl.members]
                for u in cl.members}
        for u in cl.sorted_members():
            vc = cls[u]
            if vc.degree == 1 and vc.couple_partner is None:
                ledger._move(nbrs[u][0], (u,), R3_LEAF, "R3")
            elif vc.is_poor2 and not vc.in_poor_couple:
                for v in nbrs[u]:
                    if not cls[v].is_poor2:
                        ledger._move(v, (u,), R3_POOR, "R3")
            elif vc.degree == 2 and vc.in_poor_couple:
                leaf = vc.couple_partner
                (donor,) = [v for v in nbrs[u] if v != leaf]
                ledger._move(donor, (leaf, u), R3_COUPLE, "R3")
    return ledger


# --- audit -------------------------------------------------------------------

GRANULARITIES = ("vertex", "couple", "cluster")


@dataclass(frozen=True)
class ClusterAudit:
    cluster_id: int
    size: int
    granularity: str | None  # first level at which the target holds
    min_weight: Fraction     # least per-vertex average over groups at that level
    total: Fraction


@dataclass(frozen=True)
class AuditReport:
    target: Fraction
    clusters: list[ClusterAudit]
    noncode_exact: bool
    noncode_min: Fraction | None
    conserved: bool
    budget: list[tuple[Cell, Fraction]]  # (code residue, total paid)

    @property
    def passed(self) -> bool:
        return (self.noncode_exact and self.conserved
                and all(c.granularity is not None for c in self.clusters))

    @property
    def min_group_weight(self) -> Fraction | None:
        vals = [c.min_weight for c in self.clusters]
        return min(vals) if vals else None

    def over_budget(self, budget: Fraction = BUDGET) -> list[Cell]:
        return [c for c, paid in self.budget if paid > budget]


def _groups(ledger: ChargeLedger, cl: Cluster, level: str) -> list[list[Cell]]:
    if level == "vertex":
        return [[u] for u in cl.sorted_members()]
    if level == "cluster":
        return [cl.sorted_members()]
    cls = ledger.classes[cl.id]
    groups, used = [], set()
    for u in cl.sorted_members():
        if u in used:
            continue
        vc = cls[u]
        if vc.in_poor_couple:
            pair = sorted((u, vc.couple_partner), key=Cell.sort_key)
            used.update(pair)
            groups.append(pair)
        else:
            used.add(u)
            groups.append([u])
    return groups


def audit(ledger: ChargeLedger, target: Fraction = TARGET) -> AuditReport:
    target = Fraction(target)
    rows = []
    for cl in ledger.clusters:
        granted, shown = None, None
        for level in GRANULARITIES:
            avgs = [sum(map(ledger.weight, g), Fraction(0)) / len(g)
                    for g in _groups(ledger, cl, level)]
            low = min(avgs)
            if shown is None or level == "cluster":
                shown = low
            if low >= target:
                granted, shown = level, low
                break
        rows.append(ClusterAudit(cl.id, cl.size, granted, shown, ledger.cluster_total(cl)))
    final = ledger.final
    code = ledger.pattern.code
    noncode = [w for c, w in final.items() if c not in code]
    return AuditReport(
        target=target,
        clusters=rows,
        noncode_exact=all(w == target for w in noncode),
        noncode_min=min(noncode) if noncode else None,
        conserved=sum(final.values(), Fraction(0)) == len(code),
        budget=[(c, ledger.paid[c]) for c in ledger.pattern.sorted_code()],
    )


def format_report(rep: AuditReport, machine: bool = False) -> str:
    lines = []
    if machine:
        lines.append(f"target={rep.target}")
        for c in rep.clusters:
            lines.append(f"cluster={c.cluster_id} size={c.size} "
                         f"granularity={c.granularity or 'none'} "
                         f"min_weight={c.min_weight} total={c.total}")
        lines.append(f"noncode_exact={int(rep.noncode_exact)} conserved={int(rep.conserved)}")
        for cell, paid in rep.budget:
            lines.append(f"paid cell={cell.x},{cell.y},{cell.site} amount={paid}")
        lines.append(f"pass={int(rep.passed)}")
        return "\n".join(lines) + "\n"
    lines.append(f"target {rep.target}")
    for c in rep.clusters:
        lines.append(f"cluster {c.cluster_id}: size {c.size}, "
                     f"granularity {c.granularity or 'FAIL'}, "
                     f"min group weight {c.min_weight}, total {c.total}")
    lines.append(f"non-code vertices at target: {'yes' if rep.noncode_exact else 'no'}"
                 f" (min {rep.noncode_min})")
    lines.append(f"conservation: {'exact' if rep.conserved else 'VIOLATED'}")
    over = rep.over_budget()
    lines.append(f"vertices paying more than {BUDGET}: {len(over)}")
    lines.append("PASS" if rep.passed else "FAIL")
    return "\n".join(lines) + "\n"
