#!/usr/bin/env python3
"""Produce the full CSV set consumed by the plotting package.

Runs every CLI subcommand that emits figure data into one output directory.

Usage: python scripts/generate_figure_data.py OUT_DIR [--workers N] [--coarse]
"""

import argparse
import sys
import time

from pairflight.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out_dir")
    ap.add_argument("--workers", type=int, default=4)
    ap.add_argument(
        "--coarse", action="store_true", help="faster grids (~1e-3 accuracy)"
    )
    args = ap.parse_args()
    common = ["--out-dir", args.out_dir, "--workers", str(args.workers)]
    if args.coarse:
        common += ["--tau-points", "1201", "--z-points", "2048"]
    jobs = [
        ["free-dist", "--case", "I"],
        ["free-dist", "--case", "II"],
        ["survival", "--case", "I"],
        ["survival", "--case", "II"],
        ["rel-dist", "--case", "I"],
        ["rel-dist", "--case", "II"],
        ["barrier-dist", "--case", "I"],
        ["barrier-dist", "--case", "II"],
        ["mean-times", "--case", "I"],
        ["mean-times", "--case", "II"],
        ["gamma-scan"],
    ]
    for job in jobs:
        t0 = time.time()
        rc = cli_main(job + common)
        print(f"# {' '.join(job)} -> rc={rc} in {time.time() - t0:.1f} s")
        if rc != 0:
            return rc
    return 0


if __name__ == "__main__":
    sys.exit(main())
