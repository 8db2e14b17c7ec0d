#!/usr/bin/env python3
"""Compute the benchmark mean flight times for both standard cases.

Usage: python scripts/run_mean_times.py [--workers N] [--coarse]
"""

import argparse
import time

from pairflight.analysis import ALL_STATS, CASE_I, CASE_II, mean_time_table
from pairflight.barrier import Channel
from pairflight.flighttime import QuadratureSpec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, default=4)
    ap.add_argument(
        "--coarse", action="store_true", help="faster grids (~1e-3 accuracy)"
    )
    args = ap.parse_args()
    quad = QuadratureSpec(tau_points=1201, z_points=2048) if args.coarse else None
    print(f"{'case':<6}{'statistics':<18}{'transmitted':>14}{'reflected':>12}")
    for case in (CASE_I, CASE_II):
        t0 = time.time()
        table = mean_time_table(case, quad, workers=args.workers)
        for s in ALL_STATS:
            print(
                f"{case.name:<6}{s.value:<18}"
                f"{table[Channel.TRANSMITTED][s]:>14.4f}"
                f"{table[Channel.REFLECTED][s]:>12.4f}"
            )
        print(f"# case {case.name} in {time.time() - t0:.1f} s")


if __name__ == "__main__":
    main()
