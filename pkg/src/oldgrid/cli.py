"""Command-line driver: ``oldgrid <subcommand> ...``.

Exit status: 0 success, 1 failed check, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import clusterlab, discharging
from .lattice import LATTICE_NAMES, builtin_lattice
from .pattern import PatternError, density, parse_pattern, serialize_pattern
from .render import render_pattern, render_shapes
from .search import SearchGuardError, bound_regular, format_result, search_min_density
from .verifier import is_old_set

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return parse_pattern(data)
    except PatternError as exc:
        raise InputError(f"{path}:{exc}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a fraction p/q, got {text!r}") from None


def _cell(c) -> str:
    return f"({c.x},{c.y})" if c.site == 0 else f"({c.x},{c.y},{c.site})"


def _codeset(cells) -> str:
    return "{" + ", ".join(_cell(c) for c in sorted(cells, key=lambda c: c.sort_key())) + "}"


def cmd_verify(args, out) -> int:
    p = _load(args.file)
    v = is_old_set(p)
    if args.machine:
        out.write(f"is_old={int(v.is_old)}\ndensity={density(p)}\n")
        if v.domination_witness is not None:
            out.write(f"domination_witness={_cell(v.domination_witness)}\n")
        if v.distinguishing_witness is not None:
            u, w, code = v.distinguishing_witness
            out.write(f"distinguishing_witness={_cell(u)} {_cell(w)} code={_codeset(code)}\n")
    else:
        out.write(f"{'OLD-set' if v else 'not an OLD-set'} (density {density(p)})\n")
        if v.domination_witness is not None:
            out.write(f"  undominated vertex {_cell(v.domination_witness)}\n")
        if v.distinguishing_witness is not None:
            u, w, code = v.distinguishing_witness
            out.write(f"  {_cell(u)} and {_cell(w)} share open code {_codeset(code)}\n")
    return EXIT_OK if v else EXIT_FAIL


def cmd_density(args, out) -> int:
    p = _load(args.file)
    out.write(f"density={density(p)}\n" if args.machine else f"{density(p)}\n")
    return EXIT_OK


def cmd_audit(args, out) -> int:
    p = _load(args.file)
    try:
        ledger = discharging.apply_rules(p)
    except (discharging.InfiniteCluster, discharging.UndominatedCell) as exc:
        out.write(f"cannot discharge: {exc}\n")
        return EXIT_FAIL
    rep = discharging.audit(ledger, args.target)
    out.write(discharging.format_report(rep, machine=args.machine))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_search(args, out) -> int:
    spec = builtin_lattice(args.lattice)
    if args.index is None and args.max_index is None:
        raise InputError("search needs --max-index or --index")
    indices = [args.index] if args.index is not None else None
    res = search_min_density(spec, args.max_index or 0, indices=indices,
                             threads=args.threads, symmetry=args.symmetry,
                             max_cells=args.max_cells)
    out.write(format_result(res, machine=args.machine))
    if res.witnesses and args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for n, w in enumerate(res.witnesses):
            name = f"{spec.name}-i{w.period.index}-{n:04d}.old"
            (outdir / name).write_text(serialize_pattern(w))
        out.write(f"wrote {len(res.witnesses)} witness files to {outdir}\n")
    return EXIT_OK if res.best_density is not None else EXIT_FAIL


def cmd_clusters(args, out) -> int:
    spec = builtin_lattice(args.lattice)
    try:
        shapes = clusterlab.enumerate_clusters(spec, args.size, args.mode)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    verdicts = [clusterlab.feasible(spec, s) for s in shapes]
    n_ok = sum(map(bool, verdicts))
    if args.machine:
        out.write(f"lattice={spec.name} size={args.size} mode={args.mode} "
                  f"shapes={len(shapes)} feasible={n_ok}\n")
        for s, v in zip(shapes, verdicts):
            cells = " ".join(f"{x},{y}" for x, y in s.cells)
            out.write(f"shape feasible={int(v.ok)} cells={cells}\n")
    else:
        out.write(f"{len(shapes)} {args.size}-clusters on {spec.name} up to {args.mode}; "
                  f"{n_ok} feasible\n")
        for s, v in zip(shapes, verdicts):
            why = ""
            if v.isolated is not None:
                why = f"  isolated {v.isolated}"
            elif v.twins is not None:
                why = f"  twins {v.twins[0]} {v.twins[1]}"
            out.write(f"  {'ok ' if v else 'no '} {list(s.cells)}{why}\n")
    if args.svg:
        Path(args.svg).write_text(render_shapes(spec, [s.cells for s in shapes]))
    return EXIT_OK


def cmd_bound(args, out) -> int:
    if args.regular < 1:
        raise InputError("--regular must be positive")
    b = bound_regular(args.regular)
    out.write(f"bound={b}\n" if args.machine else f"{b}\n")
    return EXIT_OK


def cmd_render(args, out) -> int:
    p = _load(args.file)
    if args.tiles < 1:
        raise InputError("--tiles must be positive")
    Path(args.output).write_text(render_pattern(p, tiles=args.tiles))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true",
                        help="emit key=value records instead of prose")
    ap = argparse.ArgumentParser(prog="oldgrid", parents=[common],
                                 description="Open-locating-dominating sets on periodic grids.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check the OLD conditions")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("density", parents=[common], help="exact density of a pattern")
    p.add_argument("file")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("audit", parents=[common], help="run the discharging rules")
    p.add_argument("file")
    p.add_argument("--target", type=_fraction, default=discharging.TARGET)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("search", parents=[common], help="minimum-density search")
    p.add_argument("--lattice", choices=LATTICE_NAMES, required=True)
    p.add_argument("--max-index", type=int)
    p.add_argument("--index", type=int, help="search this index only")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default="witnesses", help="directory for witness files")
    p.add_argument("--symmetry", action="store_true",
                   help="skip periods equivalent under lattice symmetries")
    p.add_argument("--max-cells", type=int, default=40)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("clusters", parents=[common], help="enumerate cluster shapes")
    p.add_argument("--lattice", choices=LATTICE_NAMES, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--mode", choices=clusterlab.MODES, default="isometry")
    p.add_argument("--svg", help="write the shapes as an SVG sheet")
    p.set_defaults(func=cmd_clusters)

    p = sub.add_parser("bound", parents=[common], help="regular-graph density bound")
    p.add_argument("--regular", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("render", parents=[common], help="draw a pattern as SVG")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--tiles", type=int, default=3)
    p.set_defaults(func=cmd_render)
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args, out)
    except (InputError, SearchGuardError) as exc:
        print(f"oldgrid: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
