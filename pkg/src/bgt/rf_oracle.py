"""Trimming oracle for the Reduce-Fastest(x) strategy.

Reduce-Fastest(x) trims, each day, the fastest-growing bamboo among those
whose height reached the threshold x (ties to the smaller canonical index;
canonical order makes that the smaller index among qualifying bamboos).

Bamboo i reaches x exactly ceil(x / h_i) days after its last cut, so the
schedule is equivalent to: trim the smallest index i whose "ready day" is
<= today.  Ready days are points (ready_day, i) in a priority search tree
queried with min_y_in_x_range(today).  Two trees rotate across n-day
intervals so stored day offsets stay in [0, n + ceil(x/h_n)]: the current
tree answers queries with interval-relative offsets while the next interval's
points are written one bamboo per day into the companion tree, which is
complete exactly when the interval wraps.
"""

from __future__ import annotations

from fractions import Fraction

from .core import DO_NOTHING, Instance, TrimDecision, ceil_div, trim
from .pst import Point, PrioritySearchTree

__all__ = ["RFOracle", "naive_reduce_fastest_step", "rf_bound"]


class RFOracle:
    def __init__(self, instance: Instance, x: Fraction):
        x = Fraction(x)
        if x <= 0:
            raise ValueError(f"threshold x must be positive, got {x}")
        self.instance = instance
        self.x = x
        n = instance.n
        # days after a cut for bamboo i to reach x again; >= 1 always
        self.wait_days = tuple(ceil_div(x, h) for h in instance.rates)
        cap = n + self.wait_days[-1]
        self.current_tree = PrioritySearchTree(n, max_x=cap)
        self.next_tree = PrioritySearchTree(n, max_x=cap)
        for i in range(1, n + 1):
            self.current_tree.insert(Point(self.wait_days[i - 1] - 1, i))
        self.day_offset = 0

    @staticmethod
    def _update(tree: PrioritySearchTree, x: int, y: int) -> None:
        old = tree.get_x(y)
        if old == x:
            return
        if old is not None:
            tree.delete(Point(old, y))
        tree.insert(Point(x, y))

    def query(self) -> TrimDecision:
        n = self.instance.n
        delta = self.day_offset
        hit = self.current_tree.min_y_in_x_range(delta)
        if hit is not None:
            wait = self.wait_days[hit - 1]
            self._update(self.current_tree, delta + wait, hit)
            self._update(self.next_tree, max(0, delta + wait - n), hit)
        # carry bamboo delta+1 into the next interval's frame
        y = delta + 1
        self._update(self.next_tree, max(0, self.current_tree.get_x(y) - n), y)
        self.day_offset += 1
        if self.day_offset == n:
            self.day_offset = 0
            assert len(self.next_tree) == n, "rotation with an incomplete tree"
            self.current_tree, self.next_tree = self.next_tree, self.current_tree
        return trim(hit) if hit is not None else DO_NOTHING


def naive_reduce_fastest_step(heights, x) -> TrimDecision:
    """Reference rule on explicit heights (canonical nonincreasing rates):
    trim the smallest index with height >= x, else do nothing."""
    for i, h in enumerate(heights, start=1):
        if h >= x:
            return trim(i)
    return DO_NOTHING


def rf_bound(x):
    """Makespan guarantee of Reduce-Fastest(x) for x > 1:
    max(x + x^2/(4(x-1)), 1/2 + x + x^2/(4(x-1/2))).

    Exact for Fraction input; floats are accepted for irrational thresholds
    and evaluated numerically.
    """
    if x <= 1:
        raise ValueError(f"the Reduce-Fastest bound needs x > 1, got {x}")
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        half = Fraction(1, 2)
    else:
        half = 0.5
    a = x + x * x / (4 * (x - 1))
    b = half + x + x * x / (4 * (x - half))
    return a if a >= b else b
