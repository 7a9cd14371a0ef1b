"""Command-line entry point: smatrix-figs <figure> --in data.csv --out fig.png"""

import argparse
import sys

from .recipes import FIGURE_IDS, FigureRecipe, SchemaError
from .render import render


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        return int(a), int(b)
    except ValueError:
        raise SchemaError(f"--expect-grid must look like 201x201, got {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smatrix-figs",
        description="Render photon-smatrix CLI datasets as figures (no physics recomputed)",
    )
    parser.add_argument("figure", choices=FIGURE_IDS)
    parser.add_argument("--in", dest="csv_path", required=True, help="input CSV dataset")
    parser.add_argument("--out", dest="out_path", required=True, help="output image path")
    parser.add_argument("--crit", help="crit JSON for overlay lines (fig3)")
    parser.add_argument("--expect-kind", help="refuse datasets of a different scatterer kind")
    parser.add_argument("--expect-grid", help="refuse datasets of a different grid shape, e.g. 201x201")
    parser.add_argument("--title", help="figure title override")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        recipe = FigureRecipe(
            figure_id=args.figure,
            csv_path=args.csv_path,
            out_path=args.out_path,
            crit_path=args.crit,
            expected_kind=args.expect_kind,
            expected_grid=_parse_grid(args.expect_grid) if args.expect_grid else None,
            title=args.title,
        )
        render(recipe)
        return 0
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
