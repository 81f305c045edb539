"""Exact garden simulation and bound verification.

Two simulation routes are kept deliberately separate so they can check each
other: `simulate` replays a schedule with a full O(n) exact-rational height
scan every day, while `simulate_fast` tracks only cut gaps and recovers every
per-bamboo maximum height as rate * max_gap (heights are linear in the gap,
so the identity is exact for any schedule).  The naive reference strategies
additionally get vectorized integer implementations over a common
denominator; they fall back to the rational scan when the scaled heights
could overflow 64-bit integers.

Days are 0-based.  The height of bamboo i at the end of day d, before that
day's cut, is (d - last_cut_i) * h_i with last_cut_i = -1 if never cut.  The
observed makespan of a run is the maximum such height over all bamboos and
all days of the horizon, including the standing heights on the final day.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import DO_NOTHING, Instance, TrimDecision, format_rational, trim
from .m2_oracle import M2Oracle, build_m2
from .rf_oracle import RFOracle, naive_reduce_fastest_step, rf_bound
from .rm_oracle import RMOracle, naive_reduce_max_step

__all__ = [
    "BambooStats",
    "SimulationReport",
    "EquivalenceReport",
    "default_horizon",
    "simulate",
    "simulate_fast",
    "naive_reduce_max_trace",
    "naive_reduce_fastest_trace",
    "make_scheduler",
    "verify",
    "equivalence_check",
    "report_json",
    "trace_csv",
]

# keep d * numerator (and the reduce-fastest threshold) clear of int64
_INT64_SAFE = 1 << 62


def default_horizon(n: int) -> int:
    """Long enough for every tested bound to stabilize: max(10**4, 20n)."""
    return max(10**4, 20 * n)


@dataclass
class BambooStats:
    max_height: Fraction
    max_gap: int
    cuts: int


@dataclass
class SimulationReport:
    strategy: str
    horizon: int
    observed_makespan: Fraction
    per_bamboo: list[BambooStats]
    trace: list[TrimDecision] | None = None
    bound: Fraction | None = None
    bound_ok: bool | None = None
    extras: dict = field(default_factory=dict)


@dataclass
class EquivalenceReport:
    ok: bool
    rf_ok: bool
    rm_ok: bool
    rf_first_divergence: int | None
    rm_first_divergence: int | None
    horizon: int


def _finish_gaps(last_cut, horizon, max_gap):
    for i, lc in enumerate(last_cut):
        g = horizon - 1 - lc
        if g > max_gap[i]:
            max_gap[i] = g


def _report_from_gaps(strategy, instance, horizon, max_gap, cuts, trace):
    per = [
        BambooStats(max_height=instance.rates[i] * max_gap[i], max_gap=max_gap[i], cuts=cuts[i])
        for i in range(instance.n)
    ]
    makespan = max(b.max_height for b in per)
    return SimulationReport(
        strategy=strategy,
        horizon=horizon,
        observed_makespan=makespan,
        per_bamboo=per,
        trace=trace,
    )


def simulate(step, instance: Instance, horizon: int, trace: bool = False) -> SimulationReport:
    """Drive `step(day, heights) -> TrimDecision` with a daily exact scan.

    `heights` is the pre-cut height list for the day, so height-reading
    strategies (the naive references) can be driven directly.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    n = instance.n
    rates = instance.rates
    last_cut = [-1] * n
    max_gap = [0] * n
    cuts = [0] * n
    total_trimmed = Fraction(0)
    tr: list[TrimDecision] | None = [] if trace else None
    for d in range(horizon):
        heights = [(d - lc) * r for lc, r in zip(last_cut, rates)]
        dec = step(d, heights)
        if dec.index is not None:
            i = dec.index
            if not 1 <= i <= n:
                raise ValueError(f"trim index {i} out of range 1..{n}")
            g = d - last_cut[i - 1]
            if g > max_gap[i - 1]:
                max_gap[i - 1] = g
            total_trimmed += heights[i - 1]
            cuts[i - 1] += 1
            last_cut[i - 1] = d
        if tr is not None:
            tr.append(dec)
    _finish_gaps(last_cut, horizon, max_gap)
    report = _report_from_gaps("custom", instance, horizon, max_gap, cuts, tr)
    report.extras["total_trimmed"] = total_trimmed
    report.extras["final_standing"] = sum(
        (horizon - 1 - lc) * r for lc, r in zip(last_cut, rates)
    )
    return report


def simulate_fast(oracle, instance: Instance, horizon: int, trace: bool = False) -> SimulationReport:
    """Drive a blind `oracle.query() -> TrimDecision`, tracking gaps only."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    n = instance.n
    last_cut = [-1] * n
    max_gap = [0] * n
    cuts = [0] * n
    tr: list[TrimDecision] | None = [] if trace else None
    for d in range(horizon):
        dec = oracle.query()
        if dec.index is not None:
            i = dec.index - 1
            g = d - last_cut[i]
            if g > max_gap[i]:
                max_gap[i] = g
            cuts[i] += 1
            last_cut[i] = d
        if tr is not None:
            tr.append(dec)
    _finish_gaps(last_cut, horizon, max_gap)
    return _report_from_gaps("oracle", instance, horizon, max_gap, cuts, tr)


def _ints_to_trace(arr) -> list[TrimDecision]:
    return [trim(int(v)) if v else DO_NOTHING for v in arr]


def _naive_rm_ints(instance: Instance, horizon: int, want_trace: bool):
    """Reduce-max by scaled-integer argmax; None when int64 could overflow."""
    s, nums = instance.scaled()
    if horizon * max(nums) >= _INT64_SAFE:
        return None
    n = instance.n
    num = np.array(nums, dtype=np.int64)
    lc = np.full(n, -1, dtype=np.int64)
    max_gap = [0] * n
    cuts = [0] * n
    tr = np.zeros(horizon, dtype=np.int32) if want_trace else None
    for d in range(horizon):
        cur = (d - lc) * num
        i = int(cur.argmax())  # ties: smallest index
        g = d - int(lc[i])
        if g > max_gap[i]:
            max_gap[i] = g
        cuts[i] += 1
        lc[i] = d
        if tr is not None:
            tr[d] = i + 1
    _finish_gaps(lc.tolist(), horizon, max_gap)
    return max_gap, cuts, tr


def _naive_rf_ints(instance: Instance, x: Fraction, horizon: int, want_trace: bool):
    """Reduce-fastest(x) by scaled-integer thresholding; None on overflow risk."""
    s, nums = instance.scaled()
    if horizon * max(nums) * x.denominator >= _INT64_SAFE or x.numerator * s >= _INT64_SAFE:
        return None
    n = instance.n
    num_xden = np.array(nums, dtype=np.int64) * x.denominator
    thr = x.numerator * s
    lc = np.full(n, -1, dtype=np.int64)
    max_gap = [0] * n
    cuts = [0] * n
    tr = np.zeros(horizon, dtype=np.int32) if want_trace else None
    for d in range(horizon):
        elig = (d - lc) * num_xden >= thr
        if elig.any():
            i = int(elig.argmax())  # first eligible = fastest, then smallest index
            g = d - int(lc[i])
            if g > max_gap[i]:
                max_gap[i] = g
            cuts[i] += 1
            lc[i] = d
            if tr is not None:
                tr[d] = i + 1
    _finish_gaps(lc.tolist(), horizon, max_gap)
    return max_gap, cuts, tr


def naive_reduce_max_trace(instance: Instance, horizon: int, trace: bool = False) -> SimulationReport:
    fast = _naive_rm_ints(instance, horizon, trace)
    if fast is None:
        report = simulate(lambda d, h: naive_reduce_max_step(h), instance, horizon, trace)
    else:
        max_gap, cuts, tr = fast
        report = _report_from_gaps(
            "naive-reduce-max", instance, horizon, max_gap, cuts,
            _ints_to_trace(tr) if trace else None,
        )
    report.strategy = "naive-reduce-max"
    return report


def naive_reduce_fastest_trace(
    instance: Instance, x, horizon: int, trace: bool = False
) -> SimulationReport:
    x = Fraction(x)
    fast = _naive_rf_ints(instance, x, horizon, trace)
    if fast is None:
        report = simulate(
            lambda d, h: naive_reduce_fastest_step(h, x), instance, horizon, trace
        )
    else:
        max_gap, cuts, tr = fast
        report = _report_from_gaps(
            "naive-reduce-fastest", instance, horizon, max_gap, cuts,
            _ints_to_trace(tr) if trace else None,
        )
    report.strategy = "naive-reduce-fastest"
    return report


STRATEGIES = (
    "reduce-max",
    "reduce-fastest",
    "makespan2",
    "naive-reduce-max",
    "naive-reduce-fastest",
)


def make_scheduler(strategy: str, instance: Instance, x=None):
    """Oracle object for a blind strategy name (the naive pair excluded)."""
    if strategy == "reduce-max":
        return RMOracle(instance)
    if strategy == "reduce-fastest":
        if x is None:
            raise ValueError("reduce-fastest needs a threshold x")
        return RFOracle(instance, x)
    if strategy == "makespan2":
        return build_m2(instance)
    raise ValueError(f"unknown oracle strategy {strategy!r}")


def _default_bound(strategy: str, x) -> Fraction | None:
    if strategy in ("reduce-max", "naive-reduce-max"):
        return Fraction(9)
    if strategy in ("reduce-fastest", "naive-reduce-fastest"):
        b = rf_bound(x)
        return b if isinstance(b, Fraction) else Fraction(b)
    if strategy == "makespan2":
        return Fraction(2)
    raise ValueError(f"unknown strategy {strategy!r}")


def _first_bound_crossing(instance: Instance, strategy: str, horizon: int, x, bound):
    """Earliest (day, index, height) with pre-cut height above `bound`.

    Replays the deterministic schedule and examines every maximal uncut gap:
    within a gap starting after day lc, bamboo i first exceeds the bound on
    day lc + floor(bound / h_i) + 1.  Exact, and only runs on the failure
    path, so the second pass costs no more than the run being diagnosed.
    """
    n = instance.n
    rates = instance.rates
    if strategy == "naive-reduce-max":
        decisions = naive_reduce_max_trace(instance, horizon, True).trace
        it = (dec.index for dec in decisions)
    elif strategy == "naive-reduce-fastest":
        decisions = naive_reduce_fastest_trace(instance, x, horizon, True).trace
        it = (dec.index for dec in decisions)
    else:
        oracle = make_scheduler(strategy, instance, x)
        it = (oracle.query().index for _ in range(horizon))

    best = None

    def note(lc, i, gap_end_day):
        nonlocal best
        day = lc + bound // rates[i] + 1
        if day <= gap_end_day and (best is None or day < best[0]):
            best = (day, i + 1, (day - lc) * rates[i])

    last_cut = [-1] * n
    for day, idx in enumerate(it):
        if idx is not None:
            note(last_cut[idx - 1], idx - 1, day)
            last_cut[idx - 1] = day
    for i in range(n):
        note(last_cut[i], i, horizon - 1)
    assert best is not None, "bound violation reported but no crossing found"
    return best


def verify(
    instance: Instance,
    strategy: str,
    horizon: int | None = None,
    x=None,
    bound=None,
    trace: bool = False,
) -> SimulationReport:
    """Run a strategy and compare the observed makespan to its guarantee.

    Bounds only hold when the rates sum to exactly 1; for smaller sums no
    claim is made (bound_ok stays None) unless an explicit `bound` is given.
    Also records whether the observed makespan reached the universal lower
    bound of 1 (meaningful once horizon >= 10n).
    """
    if horizon is None:
        horizon = default_horizon(instance.n)
    if x is not None:
        x = Fraction(x)
    if strategy == "naive-reduce-max":
        report = naive_reduce_max_trace(instance, horizon, trace)
    elif strategy == "naive-reduce-fastest":
        if x is None:
            raise ValueError("reduce-fastest needs a threshold x")
        report = naive_reduce_fastest_trace(instance, x, horizon, trace)
    else:
        oracle = make_scheduler(strategy, instance, x)
        report = simulate_fast(oracle, instance, horizon, trace)
        report.strategy = strategy
        if strategy == "makespan2":
            t_span = max(
                r * b.max_gap
                for r, b in zip(oracle.transformed_rates, report.per_bamboo)
            )
            report.extras["transformed_makespan"] = t_span
            report.extras["transformed_ok"] = t_span <= 1

    if bound is not None:
        report.bound = Fraction(bound)
        report.bound_ok = report.observed_makespan <= report.bound
    elif instance.sum_is_one:
        report.bound = _default_bound(strategy, x)
        report.bound_ok = report.observed_makespan <= report.bound
    else:
        report.extras["bound_skipped"] = "rates sum to less than 1"
    if report.bound_ok is False:
        day, index, h = _first_bound_crossing(instance, strategy, horizon, x, report.bound)
        report.extras["first_violation_day"] = day
        report.extras["first_violation_index"] = index
        report.extras["first_violation_height"] = h
    if instance.sum_is_one:
        report.extras["observed_ge_1"] = report.observed_makespan >= 1
    return report


def equivalence_check(instance: Instance, x, horizon: int | None = None) -> EquivalenceReport:
    """Index-exact oracle-vs-naive comparison over a shared horizon.

    reduce-fastest must match the naive trace day by day.  reduce-max only
    has to cut *a* tallest bamboo each day (ties are free), so its trace is
    replayed against an exact height recomputation instead.
    """
    if horizon is None:
        horizon = default_horizon(instance.n)
    x = Fraction(x)
    n = instance.n

    rf = RFOracle(instance, x)
    rf_trace = np.fromiter(
        (rf.query().index or 0 for _ in range(horizon)), dtype=np.int32, count=horizon
    )
    fast = _naive_rf_ints(instance, x, horizon, True)
    if fast is None:
        naive = simulate(
            lambda d, h: naive_reduce_fastest_step(h, x), instance, horizon, True
        )
        naive_trace = np.fromiter(
            (dec.index or 0 for dec in naive.trace), dtype=np.int32, count=horizon
        )
    else:
        naive_trace = fast[2]
    rf_diff = np.nonzero(rf_trace != naive_trace)[0]
    rf_first = int(rf_diff[0]) if rf_diff.size else None

    rm = RMOracle(instance)
    s, nums = instance.scaled()
    rm_first = None
    if horizon * max(nums) < _INT64_SAFE:
        num = np.array(nums, dtype=np.int64)
        lc = np.full(n, -1, dtype=np.int64)
        for d in range(horizon):
            i = rm.query().index
            cur = (d - lc) * num
            if cur[i - 1] != cur.max():
                rm_first = d
                break
            lc[i - 1] = d
    else:
        lc = [-1] * n
        rates = instance.rates
        for d in range(horizon):
            i = rm.query().index
            heights = [(d - c) * r for c, r in zip(lc, rates)]
            if heights[i - 1] != max(heights):
                rm_first = d
                break
            lc[i - 1] = d

    return EquivalenceReport(
        ok=rf_first is None and rm_first is None,
        rf_ok=rf_first is None,
        rm_ok=rm_first is None,
        rf_first_divergence=rf_first,
        rm_first_divergence=rm_first,
        horizon=horizon,
    )


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)


def report_json(report: SimulationReport, instance: Instance | None = None) -> str:
    doc = {
        "strategy": report.strategy,
        "horizon": report.horizon,
        "observed_makespan": format_rational(report.observed_makespan),
        "observed_makespan_float": float(report.observed_makespan),
        "bound": None if report.bound is None else format_rational(report.bound),
        "bound_ok": report.bound_ok,
        "per_bamboo": [
            {
                "index": i + 1,
                "max_height": format_rational(b.max_height),
                "max_gap": b.max_gap,
                "cuts": b.cuts,
            }
            for i, b in enumerate(report.per_bamboo)
        ],
        "extras": _jsonable(report.extras),
    }
    if instance is not None:
        doc["rates"] = [format_rational(r) for r in instance.rates]
        doc["original_index"] = list(instance.original_index)
    if report.trace is not None:
        doc["trace"] = [dec.index or 0 for dec in report.trace]
    return json.dumps(doc, indent=2)


def trace_csv(report: SimulationReport, instance: Instance) -> str:
    """Replay a recorded trace into day,trimmed_index,height_before_cut,
    running_makespan rows (exact rationals)."""
    if report.trace is None:
        raise ValueError("report has no trace; rerun with trace=True")
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["day", "trimmed_index", "height_before_cut", "running_makespan"])
    n = instance.n
    rates = instance.rates
    last_cut = [-1] * n
    running = Fraction(0)
    for d, dec in enumerate(report.trace):
        tallest = max((d - lc) * r for lc, r in zip(last_cut, rates))
        if tallest > running:
            running = tallest
        if dec.index is None:
            writer.writerow([d, "", "", format_rational(running)])
        else:
            i = dec.index
            h = (d - last_cut[i - 1]) * rates[i - 1]
            last_cut[i - 1] = d
            writer.writerow([d, i, format_rational(h), format_rational(running)])
    return buf.getvalue()
