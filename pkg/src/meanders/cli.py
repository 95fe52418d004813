"""Command-line surface: enumeration, pipeline runs, verification and
static SVG rendering of meandric systems.

Exit codes: 0 success, 1 verification or computation failure, 2 usage
error, 3 resource-guard refusal.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .errors import MeanderError, SizeLimitError
from .meander import (
    BRUTE_PAIR_CAP,
    brute_meander_counts,
    build_irreducible_table,
    irreducible_counts_for_n,
    trace_loops,
    write_pairs_file,
)
from .nclat import fatten, parse_cycles
from .pipeline import (
    golden_check,
    lando_zvonkin_check,
    run_pipeline,
    verify_against_brute,
)

GENFUN_R_CAP = 6

PALETTE = (
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00",
    "#a65628", "#f781bf", "#666666", "#9c9c00", "#17becf",
)


def _default_cache_dir():
    return os.environ.get("MEANDER_CACHE_DIR", "./cache")


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def cmd_enumerate(args) -> int:
    n = args.n
    if args.use_genfun:
        result = run_pipeline(args.max_r, cache_dir=args.cache_dir,
                              workers=args.workers)
        if n > result.nx:
            raise SizeLimitError(
                f"generating functions computed to order {result.nx}; "
                f"n={n} is out of range")
        counts = {}
        for r in range(0, args.max_r + 1):
            k = n - r
            if k >= 1:
                counts[k] = result.f_series[r][n - 1]
        note = (f"loop counts k >= {n - args.max_r} from generating "
                f"functions (r <= {args.max_r})")
    else:
        if n > BRUTE_PAIR_CAP and not args.override_guards:
            raise SizeLimitError(
                f"brute enumeration guard is n <= {BRUTE_PAIR_CAP}; "
                "pass --use-genfun for the high-loop slice or "
                "--override-guards to force")
        counts = brute_meander_counts(n)
        note = "full loop distribution by exhaustive pair sweep"
    if args.loops is not None:
        counts = {k: v for k, v in counts.items() if k == args.loops}
    poly = [counts.get(k, 0) for k in range(1, n + 1)]
    if args.format == "json":
        _emit(args, json.dumps(
            {"n": n, "counts": {str(k): v for k, v in sorted(counts.items())},
             "meander_polynomial": poly, "note": note},
            sort_keys=True) + "\n")
    elif args.format == "csv":
        rows = [("n", "loops", "count")]
        rows += [(n, k, v) for k, v in sorted(counts.items())]
        _emit(args, _rows_to_csv(rows))
    else:
        lines = [f"meandric systems on {n} points ({note})"]
        lines += [f"  loops {k:>2}: {v}" for k, v in sorted(counts.items())]
        lines.append(f"  polynomial coefficients (k=1..{n}): {poly}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_irreducible(args) -> int:
    if args.n is not None:
        counts = irreducible_counts_for_n(
            args.n, cache_dir=args.cache_dir, workers=args.workers,
            override_guard=args.override_guards)
        entries = {(args.n, r, a, b): v for (r, a, b), v in counts.items()}
    else:
        if args.max_r is None:
            raise SizeLimitError("irreducible needs --n or --max-r")
        table = build_irreducible_table(
            args.max_r, cache_dir=args.cache_dir, workers=args.workers,
            override_guard=args.override_guards)
        entries = table.entries
    if args.emit_pairs:
        if args.n is None:
            raise SizeLimitError("--emit-pairs needs --n")
        written = write_pairs_file(args.emit_pairs, args.n,
                                   override_guard=args.override_guards)
        sys.stderr.write(f"wrote {written} pairs to {args.emit_pairs}\n")
    items = sorted(entries.items())
    if args.format == "json":
        _emit(args, json.dumps(
            [{"n": k[0], "r": k[1], "a": k[2], "b": k[3], "count": v}
             for k, v in items]) + "\n")
    elif args.format == "csv":
        rows = [("n", "r", "a", "b", "count")]
        rows += [(k[0], k[1], k[2], k[3], v) for k, v in items]
        _emit(args, _rows_to_csv(rows))
    else:
        lines = [f"{k[0]},{k[1]},{k[2]},{k[3]},{v}" for k, v in items]
        total = sum(entries.values())
        lines.append(f"total {total}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


def _genfun_payload(result):
    return {
        "r_max": result.r_max,
        "nx": result.nx,
        "polys": [{"r": r, "coeffs": list(result.polys[r].coeffs)}
                  for r in sorted(result.polys)],
        "f_series": [{"r": r, "coeffs": result.f_series[r]}
                     for r in sorted(result.f_series)],
        "asympt": [{"r": r, "constant": str(result.asympt[r])}
                   for r in sorted(result.asympt)],
        "checks": [rec.line() for rec in result.checks],
    }


def cmd_genfun(args) -> int:
    if args.max_r > GENFUN_R_CAP and not args.override_guards:
        raise SizeLimitError(
            f"genfun guard is r <= {GENFUN_R_CAP} (the r = 6 run is already "
            "long); pass --override-guards to go further")
    result = run_pipeline(args.max_r, cache_dir=args.cache_dir,
                          workers=args.workers)
    if args.format == "json":
        _emit(args, json.dumps(_genfun_payload(result)) + "\n")
    elif args.format == "csv":
        rows = [("kind", "r", "degree_or_n", "value")]
        for r in sorted(result.polys):
            for d, c in enumerate(result.polys[r].coeffs):
                rows.append(("poly", r, d, c))
        for r in sorted(result.f_series):
            for i, c in enumerate(result.f_series[r], start=1):
                rows.append(("fseries", r, i, c))
        _emit(args, _rows_to_csv(rows))
    else:
        _emit(args, result.to_text())
    return 0


def cmd_asympt(args) -> int:
    result = run_pipeline(args.max_r, cache_dir=args.cache_dir,
                          workers=args.workers)
    import math

    rows = []
    for r in sorted(result.asympt):
        c = result.asympt[r]
        rows.append((r, str(c), float(c) / math.sqrt(math.pi)))
    if args.format == "json":
        _emit(args, json.dumps(
            [{"r": r, "constant": s, "constant_over_sqrt_pi": f}
             for r, s, f in rows]) + "\n")
    elif args.format == "csv":
        out = [("r", "constant", "constant_over_sqrt_pi")]
        out += [(r, s, repr(f)) for r, s, f in rows]
        _emit(args, _rows_to_csv(out))
    else:
        lines = [
            f"r={r}: count of (n, n-{r})-systems ~ ({s}/sqrt(pi)) * 4^n * "
            f"n^({2 * r - 3}/2)  [{f:.6f} * 4^n * n^({2 * r - 3}/2)]"
            for r, s, f in rows]
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_verify(args) -> int:
    ok = True
    lines = []

    def run_section(title, fn):
        nonlocal ok
        try:
            report = fn()
            lines.extend(report.lines())
            ok = ok and report.ok
        except MeanderError as exc:
            lines.append(f"FAIL {title}: {exc}")
            ok = False

    run_section("brute-force comparison", lambda: verify_against_brute(
        5, cache_dir=args.cache_dir, workers=args.workers))
    run_section("quadratic composition identity", lambda: lando_zvonkin_check(
        6, cache_dir=args.cache_dir, workers=args.workers))
    run_section("golden values", lambda: golden_check(
        cache_dir=args.cache_dir, workers=args.workers, r_max=3))
    lines.append("VERIFY " + ("PASS" if ok else "FAIL"))
    _emit(args, "\n".join(lines) + "\n")
    return 0 if ok else 1


def render_svg(alpha, beta) -> str:
    """Deterministic SVG: 2n points on a line, alpha's fattened arcs
    above, beta's below, each closed loop in its own color."""
    n = alpha.n
    loops = trace_loops(alpha, beta)
    loop_of = {}
    for li, loop in enumerate(loops):
        for point in loop:
            loop_of[point] = li
    spacing, margin, base = 30, 30, 170
    width = 2 * margin + (2 * n - 1) * spacing
    height = 2 * base

    def x(p):
        return margin + (p - 1) * spacing

    def arc(p, q, upper):
        r = (x(q) - x(p)) // 2
        sweep = 1 if upper else 0
        color = PALETTE[loop_of[p] % len(PALETTE)]
        return (f'<path d="M {x(p)} {base} A {r} {r} 0 0 {sweep} '
                f'{x(q)} {base}" fill="none" stroke="{color}" '
                'stroke-width="2"/>')

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<title>meandric system on {n} points, {len(loops)} '
        f'loop{"s" if len(loops) != 1 else ""}</title>',
        f'<line x1="{margin - 15}" y1="{base}" x2="{width - margin + 15}" '
        f'y2="{base}" stroke="#222222" stroke-width="1"/>',
    ]
    for p, q in fatten(alpha).pairs:
        parts.append(arc(p, q, upper=True))
    for p, q in fatten(beta).pairs:
        parts.append(arc(p, q, upper=False))
    for p in range(1, 2 * n + 1):
        parts.append(f'<circle cx="{x(p)}" cy="{base}" r="3" '
                     'fill="#222222"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_render(args) -> int:
    alpha = parse_cycles(args.alpha, args.n)
    beta = parse_cycles(args.beta, args.n)
    svg = render_svg(alpha, beta)
    out = args.output or "meander.svg"
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    sys.stderr.write(f"wrote {out}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meanders",
        description="Enumerate meandric systems and their generating "
                    "functions exactly.")
    parser.add_argument("--version", action="version", version="meanders 0.1.0")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--cache-dir", default=_default_cache_dir(),
                       help="irreducible-count cache directory "
                            "(default: $MEANDER_CACHE_DIR or ./cache)")
        p.add_argument("--output", default=None,
                       help="write to this path instead of stdout")
        p.add_argument("--format", choices=("json", "csv", "text"),
                       default="text")
        p.add_argument("--workers", default="1",
                       help="worker processes for enumeration "
                            "(integer or 'auto')")
        p.add_argument("--override-guards", action="store_true",
                       help="run past the default resource guards")

    p = sub.add_parser("enumerate", help="loop-count table for one n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--loops", type=int, default=None,
                   help="report a single loop count")
    p.add_argument("--use-genfun", action="store_true",
                   help="use generating functions for the high-loop slice")
    p.add_argument("--max-r", type=int, default=4,
                   help="r range for --use-genfun (default 4)")
    common(p)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("irreducible",
                       help="irreducible pair counts by (n, r, a, b)")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--max-r", type=int, default=None,
                   help="build the full table for n <= 2*max_r")
    p.add_argument("--emit-pairs", default=None, metavar="PATH",
                   help="also write the pairs file for --n")
    common(p)
    p.set_defaults(fn=cmd_irreducible)

    p = sub.add_parser("genfun",
                       help="generating-function polynomials up to max r")
    p.add_argument("--max-r", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_genfun)

    p = sub.add_parser("asympt", help="exact asymptotic constants")
    p.add_argument("--max-r", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_asympt)

    p = sub.add_parser("verify",
                       help="run the oracle suite and golden comparisons")
    common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("render", help="draw a meandric system as SVG")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", required=True, help='cycles, e.g. "(1,2,3)(4,5)"')
    p.add_argument("--beta", required=True)
    common(p)
    p.set_defaults(fn=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "workers", None) is not None:
        args.workers = args.workers if args.workers == "auto" else int(args.workers)
    try:
        return args.fn(args)
    except SizeLimitError as exc:
        sys.stderr.write(f"refused: {exc}\n")
        return 3
    except MeanderError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
