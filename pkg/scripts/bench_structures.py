#!/usr/bin/env python3
"""Counted-work scaling for every structure, as one CSV on stdout.

Example:
    python3 scripts/bench_structures.py --sizes 1024,4096,16384 --seed 3
"""

import argparse
import sys

from bgt.cli import bench_structure

STRUCTURES = ("pst", "envelope", "rf", "rm", "m2")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="256,1024,4096")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument(
        "--structures", default=",".join(STRUCTURES),
        help=f"subset of {STRUCTURES}",
    )
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]

    print("structure,n,ops,mean_work")
    for structure in args.structures.split(","):
        structure = structure.strip()
        if structure not in STRUCTURES:
            print(f"unknown structure {structure!r}", file=sys.stderr)
            return 2
        for row in bench_structure(structure, sizes, seed=args.seed):
            print(f"{row['structure']},{row['n']},{row['ops']},{row['mean_work']:.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
