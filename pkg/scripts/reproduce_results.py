#!/usr/bin/env python3
"""Regenerate the headline result tables and traces.

Runs the full rate sweep for all four alignment strategies, the
per-frame convergence traces at 1 and 2 Mbps, and the three-slot
scoring walkthrough.  Writes everything under results/ (override with
--out).  Expect a few minutes of runtime at the default scale.
"""

import argparse
import sys

from dtxalign.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results")
    parser.add_argument("--drops", type=int, default=20)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()
    common = ["--drops", str(args.drops), "--seed", str(args.seed)]

    jobs = [
        ["sweep", "--rates", "0.25,0.5,1.0,1.5,2.0,2.5,3.0",
         "--strategies", "all", "--out", f"{args.out}/sweep"] + common,
        ["convergence", "--rate-mbps", "1.0", "--strategies", "all",
         "--out", f"{args.out}/convergence_1mbps"] + common,
        ["convergence", "--rate-mbps", "2.0", "--strategies", "all",
         "--out", f"{args.out}/convergence_2mbps"] + common,
        ["trace-algorithm", "--steps", "6", "--out", f"{args.out}/walkthrough"],
    ]
    for argv in jobs:
        print(f"$ dtx-sim {' '.join(argv)}", flush=True)
        rc = cli_main(argv)
        if rc != 0:
            return rc
    return 0


if __name__ == "__main__":
    sys.exit(main())
