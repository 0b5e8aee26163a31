"""Command-line front end: ``era <command> ...``.

Exit status: 0 on success, 1 when verification fails, 2 on usage, range or
parameter errors. ``--format json`` prints exactly one JSON object.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path

from . import cache
from .errors import EraError
from .primecore import DEFAULT_COUNT_BOUND, DEFAULT_SIEVE_BOUND, build_indexer
from .rays import build_matrix, descend
from .spiralweb import LayoutConfig, RadiusMode, export_table, layout, render_svg
from .verify import Status, VerifyConfig, run_all

log = logging.getLogger("eratosthenes_rays")


def natural_arg(text: str) -> int:
    """Parse ``20000``, ``2e4`` or ``10**6`` as an exact integer."""
    text = text.strip().replace("_", "")
    try:
        if "**" in text:
            base, exp = text.split("**", 1)
            value = Decimal(int(base) ** int(exp))
        else:
            value = Decimal(text)
    except (ValueError, InvalidOperation):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value != value.to_integral_value() or value < 0:
        raise argparse.ArgumentTypeError(f"not a non-negative integer: {text!r}")
    return int(value)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--sieve-bound", type=natural_arg, default=DEFAULT_SIEVE_BOUND,
                   help="dense sieve bound (default 1e8)")
    p.add_argument("--count-bound", type=natural_arg, default=DEFAULT_COUNT_BOUND,
                   help="largest x for which pi(x) is answered (default 1e11)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--cache", type=Path, default=None,
                   help=f"sieve cache file (default ${cache.ENV_VAR} if set)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="era", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pi", parents=[common], help="prime counting function")
    p.add_argument("x", type=natural_arg)
    p = sub.add_parser("nth-prime", parents=[common], help="the n-th prime")
    p.add_argument("n", type=natural_arg)
    p = sub.add_parser("descend", parents=[common], help="ray seed and column of n")
    p.add_argument("n", type=natural_arg)

    for name, blurb in (("matrix", "top-left corner of the ray matrix"),
                        ("spiral", "write the spiral/web SVG and point table")):
        p = sub.add_parser(name, parents=[common], help=blurb)
        p.add_argument("--rows", type=natural_arg, default=10)
        p.add_argument("--limit", type=natural_arg, default=None,
                       help="element limit (default: count bound)")
        if name == "spiral":
            p.add_argument("--svg", type=Path)
            p.add_argument("--table", type=Path)
            p.add_argument("--radius-mode", choices=[m.value for m in RadiusMode],
                           default=RadiusMode.LOG_VALUE.value)
            p.add_argument("--offset", type=float, default=0.0, help="angular offset, radians")
            p.add_argument("--canvas", type=natural_arg, default=800)
            p.add_argument("--label-threshold", type=natural_arg, default=60)

    p = sub.add_parser("verify", parents=[common], help="run every check")
    defaults = VerifyConfig()
    p.add_argument("--limit", type=natural_arg, default=defaults.limit,
                   help="partition/classification limit")
    p.add_argument("--rows", type=natural_arg, default=defaults.num_rows)
    p.add_argument("--element-limit", type=natural_arg, default=defaults.element_limit)
    p.add_argument("--subset-limit", type=natural_arg, default=defaults.subset_limit)
    p.add_argument("--seeds", type=natural_arg, nargs="+", default=list(defaults.subset_seeds))
    p.add_argument("--sample", type=natural_arg, default=None,
                   help="sample this many interval instances instead of all")
    p.add_argument("--strict-corner", action="store_true",
                   help="fail when the published corner disagrees with computation")
    p.add_argument("--strict", action="store_true", help="a gap-growth failure is fatal")

    p = sub.add_parser("cache", parents=[common], help="persist or inspect the sieve cache")
    p.add_argument("action", choices=("save", "load"))
    p.add_argument("path", type=Path)
    return parser


def _indexer(args):
    path = args.cache or (Path(os.environ[cache.ENV_VAR]) if os.environ.get(cache.ENV_VAR) else None)
    if path is not None:
        return cache.load_or_build(path, args.sieve_bound, args.count_bound)
    return build_indexer(args.sieve_bound, args.count_bound)


def format_matrix(matrix) -> str:
    rows = [[str(v) for v in r.elements] for r in matrix.rows]
    ncols = max(len(r) for r in rows)
    widths = [max(len(r[c]) for r in rows if c < len(r)) for c in range(ncols)]
    return "\n".join(
        " ".join(cell.rjust(widths[c]) for c, cell in enumerate(r)).rstrip() for r in rows
    )


def _emit(args, query, query_args, result, text):
    if args.format == "json":
        print(json.dumps({"query": query, "args": query_args, "result": result}))
    else:
        print(text)


def _run(args) -> int:
    if args.command == "cache" and args.action == "load":
        try:
            idx = cache.load(args.path, args.count_bound)
            status = "ok"
        except (cache.CacheFormatError, OSError) as exc:
            log.warning("rejecting sieve cache %s: %s; rebuilding", args.path, exc)
            idx = build_indexer(args.sieve_bound, args.count_bound)
            cache.save(idx, args.path)
            status = "rebuilt"
        result = {"path": str(args.path), "status": status, "sieve_bound": idx.sieve_bound}
        _emit(args, "cache", {"action": "load", "path": str(args.path)}, result,
              f"{status}: {args.path} sieve_bound={idx.sieve_bound}")
        return 0

    idx = _indexer(args)
    cmd = args.command
    if cmd == "pi":
        value = idx.prime_count(args.x)
        _emit(args, "pi", {"x": args.x}, value, str(value))
    elif cmd == "nth-prime":
        value = idx.nth_prime(args.n)
        _emit(args, "nth-prime", {"n": args.n}, value, str(value))
    elif cmd == "descend":
        seed, depth = descend(idx, args.n)
        _emit(args, "descend", {"n": args.n}, {"seed": seed, "depth": depth},
              f"seed={seed} depth={depth}")
    elif cmd == "matrix":
        limit = args.limit if args.limit is not None else idx.count_bound
        matrix = build_matrix(idx, args.rows, limit)
        _emit(args, "matrix", {"rows": args.rows, "limit": limit}, matrix.to_dict(),
              format_matrix(matrix))
    elif cmd == "spiral":
        return _spiral(args, idx)
    elif cmd == "verify":
        return _verify(args, idx)
    elif cmd == "cache":
        cache.save(idx, args.path)
        result = {"path": str(args.path), "status": "saved", "sieve_bound": idx.sieve_bound}
        _emit(args, "cache", {"action": "save", "path": str(args.path)}, result,
              f"saved: {args.path} sieve_bound={idx.sieve_bound}")
    return 0


def _spiral(args, idx) -> int:
    if args.svg is None and args.table is None:
        print("era spiral: give --svg and/or --table", file=sys.stderr)
        return 2
    limit = args.limit if args.limit is not None else idx.count_bound
    matrix = build_matrix(idx, args.rows, limit)
    config = LayoutConfig(
        radius_mode=RadiusMode(args.radius_mode),
        angular_offset=args.offset,
        canvas_size=args.canvas,
        label_threshold=args.label_threshold,
    )
    spiral = layout(matrix, config)
    written = []
    if args.svg is not None:
        args.svg.write_bytes(render_svg(spiral, config))
        written.append(str(args.svg))
    if args.table is not None:
        args.table.write_bytes(export_table(spiral))
        written.append(str(args.table))
    _emit(args, "spiral", {"rows": args.rows, "limit": limit},
          {"written": written, "points": len(spiral.points)},
          "\n".join(f"wrote {w}" for w in written))
    return 0


def _verify(args, idx) -> int:
    config = VerifyConfig(
        limit=args.limit,
        num_rows=args.rows,
        element_limit=args.element_limit,
        subset_limit=args.subset_limit,
        subset_seeds=tuple(args.seeds),
        interval_sample=args.sample,
    )
    report = run_all(idx, config)
    _emit(args, "verify", {"limit": args.limit, "rows": args.rows,
                           "element_limit": args.element_limit},
          report.to_dict(), report.format_text())
    fatal = [
        r for r in report.results
        if r.status is not Status.PASS
        and not (r.check_id == "gap_growth" and r.status is Status.FAIL and not args.strict)
    ]
    if fatal or (args.strict_corner and report.data_discrepancies):
        return 1
    return 0


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except EraError as exc:
        print(f"era {args.command}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"era {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
