"""Command-line interface.

Subcommands:
  generate   write a generated instance as JSON
  simulate   run a strategy and report exact statistics
  verify     simulate, then check the strategy's makespan guarantee
  equiv      compare tree-backed oracles against the naive references
  bench      operation-count scaling for the core structures
  inspect    dump the makespan-2 tree for an instance

Exit codes: 0 success / bound holds, 1 a checked bound or equivalence
failed, 2 usage error (bad flags, malformed instance, bad generator spec).
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction

from .core import (
    Instance,
    canonicalize,
    format_rational,
    instance_from_json,
    instance_to_json,
    parse_rational,
)
from .envelope import Line, UpperEnvelope
from .m2_oracle import build_m2
from .pst import Point, PrioritySearchTree
from .rf_oracle import RFOracle
from .rm_oracle import RMOracle
from . import sim

GENERATORS = ("dyadic-random", "uniform-normalized", "two-bamboo", "regular", "figure4")

_SPEC_RE = re.compile(r"^([a-z0-9-]+)(?:\((.*)\))?$")


def generate_instance(spec: str, n: int | None = None, seed: int | None = None) -> Instance:
    """Build an instance from a generator spec like "two-bamboo(1/1024)"."""
    m = _SPEC_RE.match(spec.strip())
    if not m:
        raise ValueError(f"malformed generator spec {spec!r}")
    name, argtext = m.group(1), m.group(2)
    args = [a.strip() for a in argtext.split(",")] if argtext else []
    rng = random.Random(seed)

    if name == "dyadic-random":
        if n is None or n < 1:
            raise ValueError("dyadic-random needs --n >= 1")
        # split a unit repeatedly in half: n dyadic rates summing to exactly 1
        exponents = [0]
        for _ in range(n - 1):
            e = exponents.pop(rng.randrange(len(exponents)))
            exponents.extend((e + 1, e + 1))
        rates = [Fraction(1, 1 << e) for e in exponents]
    elif name == "uniform-normalized":
        if n is None or n < 1:
            raise ValueError("uniform-normalized needs --n >= 1")
        weights = [rng.randint(1, 10**6) for _ in range(n)]
        total = sum(weights)
        rates = [Fraction(w, total) for w in weights]
    elif name == "two-bamboo":
        eps = parse_rational(args[0]) if args else Fraction(1, 1024)
        if not 0 < eps < 1:
            raise ValueError("two-bamboo needs 0 < eps < 1")
        rates = [1 - eps, eps]
    elif name == "regular":
        if n is None or n < 1:
            raise ValueError("regular needs --n >= 1")
        if n == 1:
            rates = [Fraction(1)]
        else:
            rates = [Fraction(1, 1 << k) for k in range(1, n)]
            rates.append(Fraction(1, 1 << (n - 1)))
    elif name == "figure4":
        rates = [
            Fraction(1, 2),
            Fraction(1, 8),
            Fraction(1, 8),
            Fraction(1, 8),
            Fraction(1, 16),
            Fraction(1, 16),
        ]
    else:
        raise ValueError(f"unknown generator {name!r} (choose from {', '.join(GENERATORS)})")
    return canonicalize(rates)


def _load_instance(args) -> Instance:
    if getattr(args, "instance", None):
        with open(args.instance, "r", encoding="utf-8") as fh:
            return instance_from_json(fh.read())
    if getattr(args, "gen", None):
        return generate_instance(args.gen, n=args.n, seed=args.seed)
    raise ValueError("provide --instance PATH or --gen SPEC")


def _write_out(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_generate(args) -> int:
    inst = generate_instance(args.gen, n=args.n, seed=args.seed)
    _write_out(instance_to_json(inst), args.out)
    return 0


def _run_report(args, check_bound: bool) -> int:
    inst = _load_instance(args)
    x = parse_rational(args.x) if args.x else None
    horizon = args.horizon or sim.default_horizon(inst.n)
    bound = parse_rational(args.bound) if getattr(args, "bound", None) else None
    want_trace = args.trace or args.format == "csv"
    report = sim.verify(
        inst, args.strategy, horizon=horizon, x=x, bound=bound, trace=want_trace
    )
    if args.format == "csv":
        _write_out(sim.trace_csv(report, inst), args.out)
    else:
        _write_out(sim.report_json(report, inst), args.out)
    if check_bound:
        if report.bound_ok is None:
            print("no bound to check (rates sum to less than 1)", file=sys.stderr)
            return 0
        return 0 if report.bound_ok else 1
    return 0


def _cmd_simulate(args) -> int:
    return _run_report(args, check_bound=False)


def _cmd_verify(args) -> int:
    return _run_report(args, check_bound=True)


def _cmd_equiv(args) -> int:
    inst = _load_instance(args)
    x = parse_rational(args.x) if args.x else Fraction(2)
    horizon = args.horizon or sim.default_horizon(inst.n)
    rep = sim.equivalence_check(inst, x, horizon)
    doc = {
        "horizon": rep.horizon,
        "x": format_rational(x),
        "reduce_fastest_matches_naive": rep.rf_ok,
        "reduce_max_always_cuts_a_tallest": rep.rm_ok,
        "rf_first_divergence": rep.rf_first_divergence,
        "rm_first_divergence": rep.rm_first_divergence,
        "ok": rep.ok,
    }
    _write_out(json.dumps(doc, indent=2), args.out)
    return 0 if rep.ok else 1


def _cmd_inspect(args) -> int:
    inst = _load_instance(args)
    oracle = build_m2(inst)
    tree = oracle.tree
    doc = {
        "n": inst.n,
        "rates": [format_rational(r) for r in inst.rates],
        "rounded": [format_rational(d.value) for d in oracle.rounded],
        "transformed": [format_rational(d.value) for d in oracle.transformed],
        "phases": tree.phase_count,
        "height": tree.height(),
        "height_bound": inst.n.bit_length(),
        "nodes": tree.node_count(),
        "build_work": tree.build_work,
        "tree": tree.to_dict(),
    }
    _write_out(json.dumps(doc, indent=2), args.out)
    return 0


def bench_structure(structure: str, sizes, seed: int = 0) -> list[dict]:
    """Mean counted work per operation at each size, for scaling checks."""
    rows = []
    for n in sizes:
        rng = random.Random((seed, n).__hash__())
        if structure == "pst":
            t = PrioritySearchTree(n, max_x=None)
            for y in range(1, n + 1):
                t.insert(Point(rng.randrange(0, 4 * n), y))
            t.reset_work()
            ops = 0
            for _ in range(4 * n):
                y = rng.randint(1, n)
                t.delete(Point(t.get_x(y), y))
                t.insert(Point(rng.randrange(0, 4 * n), y))
                t.min_y_in_x_range(rng.randrange(0, 4 * n))
                ops += 3
            mean = t.work / ops
        elif structure == "envelope":
            env = UpperEnvelope()
            lines = {}
            for name in range(1, n + 1):
                line = Line(
                    name,
                    Fraction(rng.randint(1, 10**6), 10**6),
                    Fraction(rng.randint(-(10**6), 10**6), 10**6),
                )
                env.insert(line)
                lines[name] = line
            env.reset_work()
            ops = 0
            for _ in range(2 * n):
                name = rng.randint(1, n)
                old = lines[name]
                new = Line(name, old.slope, old.intercept + Fraction(rng.randint(1, 100), 100))
                env.replace(new)
                lines[name] = new
                env.upper(Fraction(rng.randrange(0, 10**6), 997))
                ops += 2
            mean = env.work / ops
        elif structure == "rf":
            inst = generate_instance("uniform-normalized", n=n, seed=seed + n)
            oracle = RFOracle(inst, Fraction(2))
            for _ in range(n):
                oracle.query()
            oracle.current_tree.reset_work()
            oracle.next_tree.reset_work()
            ops = 3 * n
            for _ in range(ops):
                oracle.query()
            mean = (oracle.current_tree.work + oracle.next_tree.work) / ops
        elif structure == "rm":
            inst = generate_instance("uniform-normalized", n=n, seed=seed + n)
            oracle = RMOracle(inst)
            for _ in range(n):
                oracle.query()
            oracle.current_env.reset_work()
            oracle.next_env.reset_work()
            ops = 3 * n
            for _ in range(ops):
                oracle.query()
            mean = (oracle.current_env.work + oracle.next_env.work) / ops
        elif structure == "m2":
            inst = generate_instance("dyadic-random", n=n, seed=seed + n)
            oracle = build_m2(inst)
            ops = 4 * n
            for _ in range(ops):
                oracle.query()
            mean = oracle.tree.query_work / oracle.tree.queries
        else:
            raise ValueError(f"unknown structure {structure!r}")
        rows.append({"structure": structure, "n": n, "ops": ops, "mean_work": mean})
    return rows


def _cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    if not sizes:
        raise ValueError("--sizes needs at least one integer")
    rows = bench_structure(args.structure, sizes, seed=args.seed or 0)
    lines = ["structure,n,ops,mean_work"]
    for r in rows:
        lines.append(f"{r['structure']},{r['n']},{r['ops']},{r['mean_work']:.3f}")
    _write_out("\n".join(lines) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bgt", description="exact bamboo-trimming schedulers and verification"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_source(p, need_gen=False):
        if not need_gen:
            p.add_argument("--instance", help="path to an instance JSON file")
        p.add_argument(
            "--gen",
            required=need_gen,
            help="generator spec: dyadic-random | uniform-normalized | "
            "two-bamboo(EPS) | regular | figure4",
        )
        p.add_argument("--n", type=int, help="size for generators that need one")
        p.add_argument("--seed", type=int, help="generator seed")

    def add_report(p):
        p.add_argument("--horizon", type=int, help="days to simulate")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--trace", action="store_true", help="record the per-day trace")

    p = sub.add_parser("generate", help="write a generated instance as JSON")
    add_source(p, need_gen=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_generate)

    for cmd, fn, h in (
        ("simulate", _cmd_simulate, "run a strategy and report statistics"),
        ("verify", _cmd_verify, "simulate and check the makespan guarantee"),
    ):
        p = sub.add_parser(cmd, help=h)
        add_source(p)
        p.add_argument("--strategy", choices=sim.STRATEGIES, default="reduce-max")
        p.add_argument("--x", help="reduce-fastest threshold, e.g. 2 or 3/2")
        if cmd == "verify":
            p.add_argument("--bound", help="override the bound to check against")
        add_report(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("equiv", help="cross-check oracles against naive references")
    add_source(p)
    p.add_argument("--x", help="reduce-fastest threshold (default 2)")
    p.add_argument("--horizon", type=int)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("bench", help="operation-count scaling for core structures")
    p.add_argument("--structure", required=True, choices=("pst", "envelope", "rf", "rm", "m2"))
    p.add_argument("--sizes", required=True, help="comma-separated sizes, e.g. 1024,4096")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("inspect", help="dump the makespan-2 tree as JSON")
    add_source(p)
    # only the tree-backed strategy has structure worth dumping
    p.add_argument("--strategy", choices=("makespan2",), default="makespan2")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_inspect)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
