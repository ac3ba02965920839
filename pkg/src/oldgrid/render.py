"""Static SVG drawings of periodic patterns and cluster shapes."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .lattice import Cell, LatticeSpec, neighbors
from .pattern import PeriodicPattern

SQ3 = math.sqrt(3.0)


def position(spec: LatticeSpec, c: Cell) -> tuple[float, float]:
    """Plane coordinates (unit edge length); triangular uses the 60-degree rhombus basis."""
    if spec.name == "triangular":
        return c.x + c.y / 2, c.y * SQ3 / 2
    if spec.name == "hexagonal":
        px = SQ3 * c.x + SQ3 / 2 * c.y
        py = 1.5 * c.y
        if c.site == 1:
            px -= SQ3 / 2
            py -= 0.5
        return px, py
    return float(c.x), float(c.y)


def _svg(cells, edges, filled, spec, scale, title, highlight=()):
    pts = {c: position(spec, c) for c in cells}
    xs = [p[0] for p in pts.values()] or [0.0]
    ys = [p[1] for p in pts.values()] or [0.0]
    pad = 1.0
    x0, y1 = min(xs) - pad, max(ys) + pad
    w = (max(xs) - min(xs) + 2 * pad) * scale
    h = (max(ys) - min(ys) + 2 * pad) * scale

    def tr(p):
        return (p[0] - x0) * scale, (y1 - p[1]) * scale

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1f}" height="{h:.1f}" '
           f'viewBox="0 0 {w:.1f} {h:.1f}">',
           f"<title>{escape(title)}</title>",
           '<rect width="100%" height="100%" fill="white"/>',
           '<g stroke="#bbbbbb" stroke-width="1">']
    for a, b in edges:
        (ax, ay), (bx, by) = tr(pts[a]), tr(pts[b])
        out.append(f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}"/>')
    out.append("</g>")
    r = scale * 0.22
    hl = set(highlight)
    for c in sorted(cells, key=Cell.sort_key):
        cx, cy = tr(pts[c])
        fill = "black" if c in filled else ("#fde8b0" if c in hl else "white")
        out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{r:.2f}" fill="{fill}" '
                   f'stroke="black" stroke-width="1"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _norm2(spec: LatticeSpec, v) -> float:
    px, py = position(spec, Cell(v[0], v[1]))
    return px * px + py * py


def reduced_basis(p: PeriodicPattern):
    """Gauss-reduced basis of the period, measured in the plane embedding."""
    r1, r2 = p.period.hnf
    while True:
        if _norm2(p.lattice, r2) < _norm2(p.lattice, r1):
            r1, r2 = r2, r1
        n1 = _norm2(p.lattice, r1)
        cross = (_norm2(p.lattice, (r1[0] + r2[0], r1[1] + r2[1])) - n1
                 - _norm2(p.lattice, r2)) / 2
        mu = round(cross / n1)
        if mu == 0:
            return r1, r2
        r2 = (r2[0] - mu * r1[0], r2[1] - mu * r1[1])


def compact_domain(p: PeriodicPattern):
    """Fundamental domain moved into the parallelogram spanned by the reduced basis."""
    r1, r2 = reduced_basis(p)
    det = r1[0] * r2[1] - r1[1] * r2[0]
    out = []
    for c in p.domain():
        # c = s*r1 + t*r2 with s, t rational; drop the integer parts
        s = (c.x * r2[1] - c.y * r2[0]) // det
        t = (r1[0] * c.y - r1[1] * c.x) // det
        out.append(c.shift(-s * r1[0] - t * r2[0], -s * r1[1] - t * r2[1]))
    return (r1, r2), out


def render_pattern(p: PeriodicPattern, tiles: int = 3, scale: float = 24.0) -> str:
    """Draw ``tiles`` x ``tiles`` copies of a fundamental domain with code
    vertices filled; the first copy is shaded."""
    if tiles < 1:
        raise ValueError("tiles must be positive")
    (r1, r2), domain = compact_domain(p)
    cells = set()
    for i in range(tiles):
        for j in range(tiles):
            dx, dy = i * r1[0] + j * r2[0], i * r1[1] + j * r2[1]
            cells.update(c.shift(dx, dy) for c in domain)
    edges = [(u, v) for u in cells for v in neighbors(p.lattice, u)
             if v in cells and u.sort_key() < v.sort_key()]
    filled = {c for c in cells if p.is_code(c)}
    title = f"{p.lattice.name} pattern, period {p.period}, {len(p.code)} codewords"
    return _svg(cells, edges, filled, p.lattice, scale, title, highlight=domain)


def render_shapes(spec: LatticeSpec, shapes, scale: float = 20.0, per_row: int = 8) -> str:
    """Sheet of small glyphs, one per cluster shape (sequences of (x, y))."""
    cells, filled, edges = set(), set(), []
    step = max((len(s) for s in shapes), default=1) * 2 + 2
    for n, shape in enumerate(shapes):
        ox, oy = (n % per_row) * step, -(n // per_row) * step
        if spec.name == "triangular":
            ox -= oy // 2  # keep rows from drifting sideways
        glyph = {Cell(x + ox, y + oy) for x, y in shape}
        cells |= glyph
        filled |= glyph
        edges += [(u, v) for u in glyph for v in neighbors(spec, u)
                  if v in glyph and u.sort_key() < v.sort_key()]
    return _svg(cells, edges, filled, spec, scale, f"{len(shapes)} {spec.name} clusters")
