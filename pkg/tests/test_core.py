import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bgt.core import (
    DO_NOTHING,
    canonicalize,
    ceil_div,
    floor_log2,
    format_rational,
    height,
    instance_from_json,
    instance_to_json,
    load_instance,
    parse_rational,
    save_instance,
    trim,
)

from conftest import instances

positive_rationals = st.fractions(
    min_value=Fraction(1, 10**6), max_value=Fraction(10**6)
)


def test_parse_rational_reads_fraction_and_integer_strings():
    assert parse_rational("3/10") == Fraction(3, 10)
    assert parse_rational(" 2 ") == Fraction(2)
    assert parse_rational("1/1024") == Fraction(1, 1024)
    with pytest.raises(ValueError):
        parse_rational("not-a-number")


@given(positive_rationals)
def test_format_rational_round_trips(value):
    assert parse_rational(format_rational(value)) == value


def test_format_rational_drops_unit_denominator():
    assert format_rational(Fraction(19, 6)) == "19/6"
    assert format_rational(Fraction(4, 2)) == "2"


def test_floor_log2_on_hand_checked_values():
    # 2^-2 = 1/4 <= 1/3 < 1/2
    assert floor_log2(Fraction(1, 3)) == -2
    assert floor_log2(Fraction(3, 10)) == -2
    assert floor_log2(Fraction(1)) == 0
    assert floor_log2(Fraction(1, 2)) == -1
    assert floor_log2(Fraction(5, 8)) == -1
    assert floor_log2(Fraction(3, 4)) == -1
    assert floor_log2(Fraction(5, 4)) == 0
    assert floor_log2(Fraction(2)) == 1
    assert floor_log2(Fraction(1, 1024)) == -10


@given(positive_rationals)
def test_floor_log2_brackets_its_argument(value):
    e = floor_log2(value)
    assert Fraction(2) ** e <= value < Fraction(2) ** (e + 1)


def test_floor_log2_rejects_nonpositive():
    with pytest.raises(ValueError):
        floor_log2(Fraction(0))
    with pytest.raises(ValueError):
        floor_log2(Fraction(-1, 2))


def test_ceil_div_on_hand_checked_values():
    assert ceil_div(Fraction(7, 2), Fraction(1, 2)) == 7
    assert ceil_div(Fraction(2), Fraction(3, 7)) == 5  # 14/3 rounds up
    assert ceil_div(Fraction(6), Fraction(3)) == 2
    with pytest.raises(ValueError):
        ceil_div(Fraction(1), Fraction(0))


@given(positive_rationals, positive_rationals)
def test_ceil_div_gives_smallest_sufficient_multiple(x, h):
    k = ceil_div(x, h)
    assert k * h >= x
    assert (k - 1) * h < x


def test_height_uses_gap_times_rate():
    assert height(Fraction(1, 4), -1, 0) == Fraction(1, 4)
    assert height(Fraction(1, 4), 2, 6) == Fraction(1)
    with pytest.raises(ValueError):
        height(Fraction(1, 4), 5, 4)


@given(
    positive_rationals,
    st.integers(min_value=-1, max_value=1000),
    st.integers(min_value=0, max_value=1000),
    st.integers(min_value=0, max_value=1000),
)
def test_height_grows_linearly_with_the_gap(rate, last_cut, wait, extra):
    day = last_cut + wait
    assert height(rate, last_cut, day + extra) - height(rate, last_cut, day) == extra * rate


def test_trim_decisions_distinguish_cut_from_idle():
    assert trim(3).is_trim
    assert trim(3).index == 3
    assert not DO_NOTHING.is_trim
    assert DO_NOTHING.index is None


def test_canonicalize_sorts_nonincreasing_and_keeps_input_order_on_ties():
    inst = canonicalize([Fraction(1, 8), Fraction(1, 2), Fraction(1, 8)])
    assert inst.rates == (Fraction(1, 2), Fraction(1, 8), Fraction(1, 8))
    assert inst.original_index == (2, 1, 3)
    assert not inst.sum_is_one
    assert inst.n == 3


def test_canonicalize_flags_exact_unit_sum():
    inst = canonicalize([Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)])
    assert inst.sum_is_one


def test_canonicalize_rejects_bad_gardens():
    with pytest.raises(ValueError):
        canonicalize([])
    with pytest.raises(ValueError):
        canonicalize([Fraction(0)])
    with pytest.raises(ValueError):
        canonicalize([Fraction(-1, 2), Fraction(1, 2)])
    with pytest.raises(ValueError):
        canonicalize([Fraction(3, 4), Fraction(1, 2)])


@given(instances())
def test_canonical_instances_satisfy_their_own_contract(inst):
    assert all(a >= b for a, b in zip(inst.rates, inst.rates[1:]))
    assert sorted(inst.original_index) == list(range(1, inst.n + 1))
    assert sum(inst.rates) <= 1
    assert inst.sum_is_one == (sum(inst.rates) == 1)


@given(instances())
def test_canonicalize_is_idempotent(inst):
    again = canonicalize(list(inst.rates))
    assert again.rates == inst.rates
    assert again.sum_is_one == inst.sum_is_one
    assert again.original_index == tuple(range(1, inst.n + 1))


@given(instances())
def test_scaled_reproduces_the_rates(inst):
    s, nums = inst.scaled()
    assert s >= 1
    assert all(Fraction(num, s) == r for num, r in zip(nums, inst.rates))
    if inst.sum_is_one:
        assert sum(nums) == s


@given(instances())
def test_instance_json_round_trips_exactly(inst):
    again = instance_from_json(instance_to_json(inst))
    assert again.rates == inst.rates
    assert again.sum_is_one == inst.sum_is_one


def test_instance_json_is_deterministic():
    inst = canonicalize([Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)])
    assert instance_to_json(inst) == instance_to_json(inst)
    parsed = json.loads(instance_to_json(inst))
    assert parsed["rates"] == ["1/3", "1/3", "1/3"]


def test_instance_json_requires_rates_key():
    with pytest.raises(ValueError):
        instance_from_json("{}")


def test_instance_file_round_trip(tmp_path):
    inst = canonicalize([Fraction(1, 2), Fraction(1, 4)])
    path = tmp_path / "garden.json"
    save_instance(inst, path)
    assert load_instance(path).rates == inst.rates
