import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bgt.pst import Point, PrioritySearchTree


def brute_min_y(points, x0):
    ys = [y for y, x in points.items() if x <= x0]
    return min(ys) if ys else None


def test_small_tree_answers_hand_checked_queries():
    t = PrioritySearchTree(max_y=10)
    t.insert(Point(5, 1))
    t.insert(Point(3, 2))
    t.insert(Point(9, 3))
    assert t.min_y_in_x_range(4) == 2
    assert t.min_y_in_x_range(5) == 1
    assert t.min_y_in_x_range(2) is None
    assert t.get_x(2) == 3
    t.delete(Point(3, 2))
    assert t.min_y_in_x_range(4) is None
    assert t.get_x(2) is None
    assert len(t) == 2


def test_rejects_out_of_universe_and_duplicate_points():
    t = PrioritySearchTree(max_y=4)
    with pytest.raises(ValueError):
        t.insert(Point(1, 0))
    with pytest.raises(ValueError):
        t.insert(Point(1, 5))
    with pytest.raises(ValueError):
        t.insert(Point(-1, 2))
    t.insert(Point(7, 2))
    with pytest.raises(ValueError):
        t.insert(Point(9, 2))
    with pytest.raises(ValueError):
        t.delete(Point(8, 2))
    with pytest.raises(ValueError):
        PrioritySearchTree(max_y=0)


def test_configured_x_cap_trips_on_oversized_coordinate():
    t = PrioritySearchTree(max_y=4, max_x=10)
    t.insert(Point(10, 1))
    with pytest.raises(AssertionError):
        t.insert(Point(11, 2))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 40), st.integers(0, 10**6))
def test_random_op_sequences_match_linear_scan(max_y, seed):
    rng = random.Random(seed)
    t = PrioritySearchTree(max_y=max_y)
    shadow = {}
    for _ in range(200):
        op = rng.random()
        if op < 0.45:
            y = rng.randint(1, max_y)
            x = rng.randint(0, 50)
            if y in shadow:
                with pytest.raises(ValueError):
                    t.insert(Point(x, y))
            else:
                t.insert(Point(x, y))
                shadow[y] = x
        elif op < 0.7 and shadow:
            y = rng.choice(list(shadow))
            t.delete(Point(shadow.pop(y), y))
        else:
            x0 = rng.randint(0, 55)
            assert t.min_y_in_x_range(x0) == brute_min_y(shadow, x0)
    for y in range(1, max_y + 1):
        assert t.get_x(y) == shadow.get(y)


def test_work_grows_logarithmically_with_universe_size():
    per_op = {}
    for max_y in (1 << 10, 1 << 14):
        t = PrioritySearchTree(max_y=max_y)
        rng = random.Random(max_y)
        for y in range(1, 512):
            t.insert(Point(rng.randint(0, 10**6), y))
        t.reset_work()
        ops = 3000
        for i in range(ops):
            t.min_y_in_x_range(rng.randint(0, 10**6))
        per_op[max_y] = t.work / ops
    # One extra tree level (14/10 in the exponent) must not blow up the cost.
    assert per_op[1 << 14] <= per_op[1 << 10] * 1.5
