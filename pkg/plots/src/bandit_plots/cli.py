"""Command-line front end: ``plot <kind> --in <csv> --out <img> [--eps <val>]``.

Exit codes: 0 ok, 2 bad arguments or schema mismatch, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys

from .render import PlotSpec, SchemaError, render

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render benchmark CSV artifacts to figures.",
    )
    parser.add_argument(
        "kind",
        choices=("curves", "gap_functions", "ratio"),
        help="figure kind",
    )
    parser.add_argument(
        "--in",
        dest="input_path",
        default=None,
        help="input CSV (curves.csv or ratio.csv schema); unused for gap_functions",
    )
    parser.add_argument("--out", required=True, help="output image path (.png or .svg)")
    parser.add_argument(
        "--eps",
        type=float,
        default=0.2,
        help="lenience level for the gap_functions figure (default 0.2)",
    )
    parser.add_argument("--title", default=None)
    parser.add_argument("--xlabel", default=None)
    parser.add_argument("--ylabel", default=None)
    parser.add_argument("--log-x", action="store_true", help="log-scale the x axis (curves)")
    parser.add_argument(
        "--no-band", action="store_true", help="suppress the std band on curves figures"
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = PlotSpec(
            kind=args.kind,
            input_path=args.input_path,
            output_path=args.out,
            eps=args.eps,
            title=args.title,
            xlabel=args.xlabel,
            ylabel=args.ylabel,
            log_x=args.log_x,
            band=not args.no_band,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    try:
        out = render(spec)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {out}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
