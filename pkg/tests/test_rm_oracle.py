from fractions import Fraction

import pytest
from hypothesis import given, settings

from bgt.core import canonicalize, height
from bgt.rm_oracle import RMOracle, naive_reduce_max_step
from conftest import instances


def replay_heights(instance, decisions):
    """Trimmed height and daily maximum for each day of an index trace."""
    last_cut = [-1] * instance.n
    out = []
    for day, idx in enumerate(decisions):
        heights = [height(r, lc, day) for r, lc in zip(instance.rates, last_cut)]
        assert idx is not None
        out.append((heights[idx - 1], max(heights)))
        last_cut[idx - 1] = day
    return out


def test_naive_step_takes_the_smallest_tallest_index():
    assert naive_reduce_max_step([Fraction(2), Fraction(3), Fraction(3)]).index == 2
    assert naive_reduce_max_step([Fraction(5)]).index == 1


def test_single_bamboo_is_cut_every_day():
    inst = canonicalize([Fraction(1, 2)])
    oracle = RMOracle(inst)
    assert [oracle.query().index for _ in range(5)] == [1] * 5


def test_three_bamboo_trace_always_cuts_a_tallest_bamboo():
    inst = canonicalize([Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)])
    oracle = RMOracle(inst)
    decisions = [oracle.query().index for _ in range(48)]
    for trimmed, tallest in replay_heights(inst, decisions):
        assert trimmed == tallest


@settings(max_examples=120, deadline=None)
@given(instances(max_n=7))
def test_oracle_choice_matches_the_daily_maximum_exactly(inst):
    oracle = RMOracle(inst)
    horizon = 10 * inst.n + 20
    decisions = [oracle.query().index for _ in range(horizon)]
    assert all(idx is not None for idx in decisions)
    for trimmed, tallest in replay_heights(inst, decisions):
        assert trimmed == tallest


@settings(max_examples=60, deadline=None)
@given(instances(max_n=6))
def test_cut_counts_roughly_track_rates_over_long_runs(inst):
    # Reduce-Max must serve every bamboo; none can starve forever.
    oracle = RMOracle(inst)
    horizon = 40 * inst.n + 40
    counts = [0] * inst.n
    for _ in range(horizon):
        counts[oracle.query().index - 1] += 1
    assert all(c > 0 for c in counts)


def test_envelope_rotation_preserves_full_population():
    inst = canonicalize([Fraction(1, 5)] * 5)
    oracle = RMOracle(inst)
    for _ in range(5 * 7):
        oracle.query()
    assert len(oracle.current_env) == 5
    assert oracle.day_offset == 0


def test_query_work_stays_polylogarithmic_in_n():
    per_op = {}
    for n in (64, 256):
        inst = canonicalize([Fraction(1, n)] * n)
        oracle = RMOracle(inst)
        for _ in range(2 * n):
            oracle.query()
        oracle.current_env.reset_work()
        oracle.next_env.reset_work()
        for _ in range(3 * n):
            oracle.query()
        per_op[n] = (oracle.current_env.work + oracle.next_env.work) / (3 * n)
    assert per_op[256] <= per_op[64] * 2.0
