"""Command line: plotviz <figure-id> --in DIR --out DIR."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .figures import FIGURES, render
from .io import CsvError

REFERENCE_DATA = Path(__file__).resolve().parents[2] / "reference_data"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plotviz",
        description="Render pairflight figure analogues from CSV output",
    )
    parser.add_argument("--version", action="version", version=f"plotviz {__version__}")
    parser.add_argument(
        "figure_id",
        choices=sorted(FIGURES) + ["all"],
        help="which figure to render ('all' for every one)",
    )
    parser.add_argument(
        "--in",
        dest="in_dir",
        default=str(REFERENCE_DATA),
        help="directory with pairflight CSV files (default: shipped reference set)",
    )
    parser.add_argument("--out", dest="out_dir", default=".", help="output directory")
    args = parser.parse_args(argv)
    ids = sorted(FIGURES) if args.figure_id == "all" else [args.figure_id]
    for figure_id in ids:
        try:
            target = render(figure_id, args.in_dir, args.out_dir)
        except (CsvError, ValueError) as exc:
            print(f"plotviz: {exc}", file=sys.stderr)
            return 1
        print(f"wrote {target}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
