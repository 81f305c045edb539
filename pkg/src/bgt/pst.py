"""Priority search tree over integer points with distinct y in a fixed range.

The y universe is [1, max_y] and is fixed at construction (one point per
bamboo, so the universe never grows).  Internally this is a segment tree over
y storing the minimum x per subtree, padded to a power of two:

  - min_y_in_x_range(x0) descends to the leftmost leaf whose subtree minimum
    is <= x0, i.e. the smallest y among points with x <= x0, in one
    root-to-leaf walk;
  - get_x(y) is a dictionary lookup, maintained atomically with the tree.

`work` counts node visits so tests can check the logarithmic growth claim
without wall clocks.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Point", "PrioritySearchTree"]

_EMPTY = float("inf")  # sentinel x for "no point in this subtree"


@dataclass(frozen=True)
class Point:
    x: int
    y: int


class PrioritySearchTree:
    def __init__(self, max_y: int, max_x: int | None = None):
        if max_y < 1:
            raise ValueError(f"max_y must be at least 1, got {max_y}")
        cap = 1
        while cap < max_y:
            cap <<= 1
        self.max_y = max_y
        self.max_x = max_x
        self._cap = cap
        self._min_x = [_EMPTY] * (2 * cap)
        self._x_of = {}
        self.work = 0

    def __len__(self) -> int:
        return len(self._x_of)

    def reset_work(self) -> None:
        self.work = 0

    def _pull_up(self, leaf: int) -> None:
        i = leaf >> 1
        while i >= 1:
            self.work += 1
            self._min_x[i] = min(self._min_x[2 * i], self._min_x[2 * i + 1])
            i >>= 1

    def insert(self, p: Point) -> None:
        if not 1 <= p.y <= self.max_y:
            raise ValueError(f"y must be in [1, {self.max_y}], got {p.y}")
        if p.x < 0:
            raise ValueError(f"x must be nonnegative, got {p.x}")
        if p.y in self._x_of:
            raise ValueError(f"a point with y = {p.y} is already stored")
        # Interval rotation keeps day offsets small; a configured cap makes
        # that invariant crash loudly instead of drifting.
        assert self.max_x is None or p.x <= self.max_x, (p, self.max_x)
        self._x_of[p.y] = p.x
        leaf = self._cap + p.y - 1
        self._min_x[leaf] = p.x
        self.work += 1
        self._pull_up(leaf)

    def delete(self, p: Point) -> None:
        if self._x_of.get(p.y) != p.x:
            raise ValueError(f"point ({p.x}, {p.y}) is not stored")
        del self._x_of[p.y]
        leaf = self._cap + p.y - 1
        self._min_x[leaf] = _EMPTY
        self.work += 1
        self._pull_up(leaf)

    def get_x(self, y: int) -> int | None:
        self.work += 1
        return self._x_of.get(y)

    def min_y_in_x_range(self, x0: int) -> int | None:
        """Smallest y among stored points with x <= x0, or None."""
        self.work += 1
        if self._min_x[1] > x0:
            return None
        i = 1
        while i < self._cap:
            self.work += 1
            i = 2 * i if self._min_x[2 * i] <= x0 else 2 * i + 1
        return i - self._cap + 1
