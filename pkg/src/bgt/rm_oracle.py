"""Trimming oracle for the Reduce-Max strategy.

Reduce-Max trims the currently tallest bamboo each day (ties broken
arbitrarily; here, by whichever line the envelope returns).  Within an n-day
interval, bamboo i's height on interval day d is the line h_i * d + c_i, so
"tallest today" is an upper-envelope query at the interval-relative day.
Lines are stored scaled by the rates' common denominator, which keeps every
coefficient an integer and no comparison changes sign.  Two
envelopes rotate across intervals: the current one answers queries while the
companion accumulates every line rewritten into the next interval's frame,
one bamboo per day plus every trimmed bamboo, and is complete exactly at the
wrap.  Lines enter the first interval lazily (bamboo i on day i-1): a bamboo
not yet inserted is never-cut and slower than some never-cut inserted one, so
the envelope's answer is still a valid tallest choice.
"""

from __future__ import annotations

from fractions import Fraction

from .core import Instance, TrimDecision, trim
from .envelope import Line, UpperEnvelope

__all__ = ["RMOracle", "naive_reduce_max_step"]


class RMOracle:
    def __init__(self, instance: Instance):
        self.instance = instance
        self.day_offset = 0
        self.current_env = UpperEnvelope()
        self.next_env = UpperEnvelope()
        # the envelopes hold every height line scaled by the rates' common
        # denominator: slopes and intercepts become integers (the argmax at
        # every day is unchanged) and the hull predicates stay single-word
        scale, nums = instance.scaled()
        self._nums = nums
        self._slopes = tuple(Fraction(w) for w in nums)
        # intercept bound from the constant makespan guarantee (stated for
        # rate sum exactly 1); a breach means the schedule drifted
        n = instance.n
        self._c_bounds = (
            tuple(9 * scale + n * w for w in nums) if instance.sum_is_one else None
        )

    def _set(self, env: UpperEnvelope, line: Line) -> None:
        assert self._c_bounds is None or abs(line.intercept) <= self._c_bounds[line.name - 1], line
        old = env.lookup(line.name)
        if old is None:
            env.insert(line)
        elif old.intercept != line.intercept or old.slope != line.slope:
            env.replace(line)

    def query(self) -> TrimDecision:
        inst = self.instance
        n = inst.n
        delta = self.day_offset
        newcomer = delta + 1
        if self.current_env.lookup(newcomer) is None:
            # never cut: height on interval day d is (d + 1) * h
            w = self._slopes[delta]
            self.current_env.insert(Line(newcomer, w, w))
        top = self.current_env.upper(delta)
        i = top.name
        w_i = self._slopes[i - 1]
        k = self._nums[i - 1]
        # cut i today: height becomes (d - delta) * h_i in this frame,
        # (n + d' - delta) * h_i in the next interval's frame
        self._set(self.current_env, Line(i, w_i, Fraction(-delta * k)))
        self._set(self.next_env, Line(i, w_i, Fraction((n - delta) * k)))
        # carry bamboo delta+1 into the next frame (reads the intercept
        # written above when i == delta+1; both writes agree)
        cur = self.current_env.lookup(newcomer)
        self._set(
            self.next_env,
            Line(newcomer, cur.slope, n * cur.slope + cur.intercept),
        )
        self.day_offset += 1
        if self.day_offset == n:
            self.day_offset = 0
            assert len(self.next_env) == n, "rotation with an incomplete envelope"
            self.current_env, self.next_env = self.next_env, self.current_env
        return trim(i)


def naive_reduce_max_step(heights) -> TrimDecision:
    """Reference rule on explicit heights: trim the tallest bamboo, ties to
    the smallest index."""
    best = 0
    for i in range(1, len(heights)):
        if heights[i] > heights[best]:
            best = i
    return trim(best + 1)
