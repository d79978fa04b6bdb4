"""Script entry point: ``python -m binoc_plots <figure-id> inputs... --out FIG``."""

import argparse
import sys

from .recipes import FIGURE_IDS, recipe_for
from .render import render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="binoc-plots",
        description="Render sweep CSV/JSON tables into publication-style figures.",
    )
    parser.add_argument("figure_id", choices=FIGURE_IDS)
    parser.add_argument("inputs", nargs="+", help="sweep tables, one per panel")
    parser.add_argument("--out", required=True, help="output image path (png/pdf/svg)")
    args = parser.parse_args(argv)
    try:
        recipe = recipe_for(args.figure_id, args.inputs)
        render(recipe, args.out)
    except (ValueError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
