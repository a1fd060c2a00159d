"""Command-line figure pipeline: `xyplots heatmap` and `xyplots scaling`.

Arguments mirror the FigureSpec fields; exit code 0 on success, 2 on bad
arguments or unreadable/malformed input.
"""
from __future__ import annotations

import argparse
import sys

from .render import FigureSpec, render_heatmap, render_scaling


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("input", help="CSV file written by the xyquench CLI")
    sub.add_argument("output", help="image path (.png or .svg)")
    sub.add_argument("--xlabel", default=None)
    sub.add_argument("--ylabel", default=None)
    sub.add_argument("--title", default=None)
    sub.add_argument("--dpi", type=int, default=150)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xyplots", description="Render figures from xyquench CSV output")
    sub = parser.add_subparsers(dest="command", required=True)

    heat = sub.add_parser("heatmap", help="(t, h1) heatmap of one measure")
    _add_common(heat)
    heat.add_argument("--measure", default="c_re", help="measure column (default c_re)")
    heat.add_argument("--cmap", default="viridis")

    scal = sub.add_parser("scaling", help="revival time versus chain size with fit line")
    _add_common(scal)
    scal.add_argument("--measure", default=None,
                      help="series to plot (default: first in the file)")
    scal.add_argument("--slope", type=float, default=None,
                      help="fit overlay slope (with --intercept; overrides metadata)")
    scal.add_argument("--intercept", type=float, default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    fit = None
    if ns.command == "scaling":
        if (ns.slope is None) != (ns.intercept is None):
            print("error: --slope and --intercept must be given together",
                  file=sys.stderr)
            return 2
        if ns.slope is not None:
            fit = (ns.slope, ns.intercept)
    spec = FigureSpec(input=ns.input, output=ns.output, measure=ns.measure,
                      xlabel=ns.xlabel, ylabel=ns.ylabel, title=ns.title,
                      cmap=getattr(ns, "cmap", "viridis"), dpi=ns.dpi, fit=fit)
    try:
        if ns.command == "heatmap":
            render_heatmap(spec)
        else:
            render_scaling(spec)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
