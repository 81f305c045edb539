#!/usr/bin/env python3
"""Sweep every strategy over a batch of random gardens and tabulate the
observed makespan against each guarantee.

Example:
    python3 scripts/verify_bounds.py --sizes 10,100 --per-size 5 --horizon 100000
"""

import argparse
import sys
from fractions import Fraction

from bgt import sim
from bgt.cli import generate_instance
from bgt.core import format_rational
from bgt.rf_oracle import rf_bound


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="10,100", help="comma-separated garden sizes")
    ap.add_argument("--per-size", type=int, default=5, help="random gardens per size")
    ap.add_argument("--horizon", type=int, default=10**5)
    ap.add_argument("--x", default="2", help="reduce-fastest threshold p/q")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    x = Fraction(args.x)
    runs = [
        ("naive-reduce-max", None, Fraction(9)),
        ("naive-reduce-fastest", x, rf_bound(x)),
        ("makespan2", None, Fraction(2)),
    ]

    print(f"{'strategy':<22} {'n':>6} {'gen':<8} {'observed':>12} {'bound':>10} ok")
    failures = 0
    for n in sizes:
        for j in range(args.per_size):
            for kind in ("uniform-normalized", "dyadic-random"):
                inst = generate_instance(kind, n=n, seed=args.seed + 1000 * n + j)
                for strategy, threshold, bound in runs:
                    rep = sim.verify(inst, strategy, horizon=args.horizon, x=threshold)
                    ok = rep.bound_ok
                    if ok is False:
                        failures += 1
                        extra = (
                            f"  FIRST VIOLATION day {rep.extras['first_violation_day']}"
                            f" height {format_rational(rep.extras['first_violation_height'])}"
                        )
                    else:
                        extra = ""
                    print(
                        f"{strategy:<22} {n:>6} {kind.split('-')[0]:<8} "
                        f"{float(rep.observed_makespan):>12.6f} "
                        f"{format_rational(bound):>10} {ok}{extra}"
                    )
    if failures:
        print(f"{failures} bound violations", file=sys.stderr)
        return 1
    print("all bounds hold")
    return 0


if __name__ == "__main__":
    sys.exit(main())
