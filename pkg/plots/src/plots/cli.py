"""Command line: ``plots <figure-id> <csv> [-o out.png]``.

Exit codes follow the experiment CLI conventions: 2 for usage or schema
problems, 3 for a missing input file.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import FIGURE_BUILDERS, PlotError, build_spec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plots", description="Render an experiment CSV into a chart."
    )
    parser.add_argument("figure", choices=sorted(FIGURE_BUILDERS))
    parser.add_argument("csv", help="input CSV file for that figure")
    parser.add_argument("-o", "--out", help="output image (default: <figure>.png)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    csv_path = Path(args.csv)
    if not csv_path.exists():
        print(f"error: no such file: {csv_path}", file=sys.stderr)
        return 3
    out = args.out or f"{args.figure}.png"
    try:
        fig = render(build_spec(args.figure, csv_path, out))
    except PlotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    import matplotlib.pyplot as plt

    plt.close(fig)
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
