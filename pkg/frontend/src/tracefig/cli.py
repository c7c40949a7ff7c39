"""Command-line figure rendering: trace CSV(s) in, one image out."""

from __future__ import annotations

import argparse
import sys

from .render import PlotSpec, TraceFormatError, X_COLUMNS, render_convergence


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="finitesum-plot",
        description="Render a convergence figure (objective gap vs gradient "
                    "evaluations, log scale) from solver trace CSVs.",
    )
    parser.add_argument("--in", dest="inputs", action="append", required=True,
                        help="trace CSV path (repeatable for merged figures)")
    parser.add_argument("--x", default="paper_axis", choices=list(X_COLUMNS),
                        help="evaluation counter column (default paper_axis)")
    parser.add_argument("--fstar", default="auto",
                        help="gap baseline: a number, or 'auto' for the best "
                             "observed objective (default auto)")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--title", default="", help="figure title")
    args = parser.parse_args(argv)

    spec = PlotSpec(
        inputs=args.inputs,
        output=args.out,
        x_column=args.x,
        f_star=None if args.fstar == "auto" else float(args.fstar),
        title=args.title,
    )
    try:
        render_convergence(spec)
    except (TraceFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
