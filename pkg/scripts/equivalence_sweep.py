#!/usr/bin/env python3
"""Random (instance, x) equivalence sweep: oracle traces vs naive references.

Each pair checks the reduce-fastest oracle index-for-index against the naive
rule and replays the reduce-max oracle's cuts against exact daily maxima.

Example:
    python3 scripts/equivalence_sweep.py --pairs 20 --max-n 100 --horizon 20000
"""

import argparse
import math
import random
import sys
from fractions import Fraction

from bgt import sim
from bgt.cli import generate_instance

THRESHOLDS = (
    Fraction(1), Fraction(9, 8), Fraction(3, 2),
    Fraction(1809, 1250), Fraction(2), Fraction(3),
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", type=int, default=20)
    ap.add_argument("--max-n", type=int, default=100)
    ap.add_argument("--horizon", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    bad = 0
    for i in range(args.pairs):
        n = round(math.exp(rng.uniform(math.log(2), math.log(args.max_n))))
        kind = "uniform-normalized" if rng.random() < 0.5 else "dyadic-random"
        x = rng.choice(THRESHOLDS)
        inst = generate_instance(kind, n=n, seed=rng.randrange(10**6))
        rep = sim.equivalence_check(inst, x, horizon=args.horizon)
        status = "ok" if rep.ok else (
            f"DIVERGED rf@{rep.rf_first_divergence} rm@{rep.rm_first_divergence}"
        )
        print(f"pair {i:>3}: n={n:<4} {kind.split('-')[0]:<8} x={x!s:<10} {status}")
        if not rep.ok:
            bad += 1
    if bad:
        print(f"{bad}/{args.pairs} pairs diverged", file=sys.stderr)
        return 1
    print(f"all {args.pairs} pairs equivalent over {args.horizon} days")
    return 0


if __name__ == "__main__":
    sys.exit(main())
