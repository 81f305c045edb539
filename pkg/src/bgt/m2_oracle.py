"""Makespan-2 trimming oracle.

Pipeline: round every rate down to a power of 1/2, boost the rounded rates
(largest first) back up to the largest powers of 1/2 keeping the sum <= 1
(the result sums to exactly 1), then build a tree of virtual bamboos whose
internal nodes each schedule their children with a binary-counter oracle.

A *regular* collection has rates 1/2, 1/4, ..., 2^-(k-1), 2^-(k-1) after
scaling by the collection's total rate; a width-(k-1) binary counter
schedules it with makespan exactly 1 (child j every 2^j days).  The tree is
built in phases over a doubly linked list of rate buckets: each step scans
the maximal run of consecutive rates from the largest remaining rate,
merges one bamboo per bucket up to the last bucket holding a pair (that pair
closes the regular pattern) into a virtual bamboo of twice the head rate, and
defers the passed-over tail of the run to the next phase.  Querying descends
from the root by each node's counter; the leaf reached is the bamboo cut
today.  Against the boosted rates the schedule has makespan 1, and boosting
loses less than a factor 2 per rate, so against the original rates the
makespan is at most 2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .core import Instance, TrimDecision, floor_log2, trim

__all__ = [
    "DyadicRate",
    "RegularOracle",
    "TreeNode",
    "OracleTree",
    "M2Oracle",
    "round_rates",
    "boost_rates",
    "build_tree",
    "build_m2",
]


@dataclass(frozen=True)
class DyadicRate:
    """A rate of exactly 2**-exponent, exponent >= 0."""

    exponent: int

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError(f"dyadic exponent must be >= 0, got {self.exponent}")

    @property
    def value(self) -> Fraction:
        return Fraction(1, 1 << self.exponent)


def round_rates(instance: Instance) -> list[DyadicRate]:
    """Round each rate down to a power of 1/2 (order is preserved)."""
    out = []
    for r in instance.rates:
        if r > 1:
            raise ValueError(f"rate {r} > 1 cannot be rounded to a dyadic rate")
        out.append(DyadicRate(-floor_log2(r)))
    return out


def boost_rates(rounded: list[DyadicRate]) -> list[DyadicRate]:
    """Raise each rate, largest first, to the largest power of 1/2 that keeps
    the sum at most 1; the result sums to exactly 1."""
    vals = [d.value for d in rounded]
    assert all(a >= b for a, b in zip(vals, vals[1:])), "rates must be nonincreasing"
    total = sum(vals)
    assert total <= 1, "rounded rates must sum to at most 1"
    for i in range(len(vals)):
        slack = 1 - (total - vals[i])
        e = floor_log2(slack)
        new = Fraction(1 << e) if e >= 0 else Fraction(1, 1 << -e)
        total += new - vals[i]
        vals[i] = new
    assert total == 1, "boosting must close the gap to 1 exactly"
    out = sorted((DyadicRate(-floor_log2(v)) for v in vals), key=lambda d: d.exponent)
    # boosting never breaks the nonincreasing order, so the stable re-sort is
    # a no-op and leaf positions keep matching canonical bamboo indices
    assert [d.exponent for d in out] == [-floor_log2(v) for v in vals]
    return out


class RegularOracle:
    """Binary-counter scheduler for k children with scaled rates
    1/2, 1/4, ..., 2^-(k-1), 2^-(k-1).

    A query returns the 1-based position of the counter's lowest 0 bit (k if
    the counter wraps), then increments: child j is returned exactly once
    every 2^j queries (2^(k-1) for child k), which is makespan 1 for the
    scaled rates.  Flipping bits until the first 0 makes increment and answer
    one O(1)-amortized pass.
    """

    __slots__ = ("k", "bits")

    def __init__(self, k: int):
        if k < 1:
            raise ValueError(f"a regular oracle needs at least 1 child, got {k}")
        self.k = k
        self.bits = [0] * (k - 1)

    def query(self) -> int:
        bits = self.bits
        for j in range(len(bits)):
            if bits[j]:
                bits[j] = 0
            else:
                bits[j] = 1
                return j + 1
        return self.k


@dataclass(eq=False)
class TreeNode:
    """Virtual bamboo (internal, rate = sum of children) or real leaf."""

    exponent: int
    children: list["TreeNode"] = field(default_factory=list)
    leaf_index: int | None = None
    oracle: RegularOracle | None = None
    creation_seq: int = 0
    min_index: int = 0

    @property
    def rate(self) -> Fraction:
        return Fraction(1, 1 << self.exponent)

    @property
    def is_leaf(self) -> bool:
        return not self.children


def _scaled_regular(node: TreeNode) -> bool:
    k = len(node.children)
    if k < 2:
        return False
    want = [node.exponent + j for j in range(1, k)] + [node.exponent + k - 1]
    return [c.exponent for c in node.children] == want


class _Bucket:
    __slots__ = ("exponent", "items", "prev", "next")

    def __init__(self, exponent):
        self.exponent = exponent
        self.items = deque()
        self.prev = None
        self.next = None


@dataclass(eq=False)
class OracleTree:
    root: TreeNode
    leaves: list[TreeNode]
    transformed: tuple[DyadicRate, ...]
    phase_count: int
    build_work: int
    query_work: int = 0
    queries: int = 0

    def query(self) -> int:
        """Canonical index of today's bamboo: descend by node counters."""
        node = self.root
        work = self.query_work
        while node.children:
            work += 1
            node = node.children[node.oracle.query() - 1]
        self.query_work = work
        self.queries += 1
        return node.leaf_index

    def height(self) -> int:
        def depth(node):
            return 1 + max(map(depth, node.children)) if node.children else 0

        return depth(self.root)

    def node_count(self) -> int:
        def count(node):
            return 1 + sum(map(count, node.children))

        return count(self.root)

    def to_dict(self) -> dict:
        def dump(node):
            d = {"rate": f"1/{1 << node.exponent}" if node.exponent else "1"}
            if node.is_leaf:
                d["leaf"] = node.leaf_index
            else:
                d["counter_bits"] = len(node.children) - 1
                d["children"] = [dump(c) for c in node.children]
            return d

        return dump(self.root)


def build_tree(transformed) -> OracleTree:
    """Build the virtual-bamboo tree for dyadic rates summing to exactly 1."""
    rates = list(transformed)
    n = len(rates)
    if n == 0:
        raise ValueError("at least one rate is required")
    if sum(d.value for d in rates) != 1:
        raise ValueError("transformed rates must sum to exactly 1")

    leaves = [
        TreeNode(exponent=d.exponent, leaf_index=i + 1, min_index=i + 1)
        for i, d in enumerate(rates)
    ]
    items = sorted(leaves, key=lambda t: t.exponent)  # stable
    work = n
    phases = 0
    seq = 1

    while len(items) > 1:
        phases += 1
        snapshot = items

        head = None
        tail = None
        for it in items:
            work += 1
            if tail is None or tail.exponent != it.exponent:
                b = _Bucket(it.exponent)
                b.prev = tail
                if tail is not None:
                    tail.next = b
                else:
                    head = b
                tail = b
            tail.items.append(it)

        def unlink(b):
            nonlocal head
            if b.prev is not None:
                b.prev.next = b.next
            else:
                head = b.next
            if b.next is not None:
                b.next.prev = b.prev

        virtuals = []
        deferred = set()

        while head is not None:
            # scan the maximal consecutive-exponent run from the head and
            # remember the last bucket in it holding at least a pair
            last_pair = None
            b = head
            while True:
                work += 1
                if len(b.items) >= 2:
                    last_pair = b
                if b.next is None or b.next.exponent != b.exponent + 1:
                    break
                b = b.next
            run_end = b

            if last_pair is None:
                # no merge can start at this run; defer it whole
                b = head
                stop = run_end.next
                while b is not stop:
                    for it in b.items:
                        deferred.add(id(it))
                        work += 1
                    nxt = b.next
                    unlink(b)
                    b = nxt
                continue

            children = []
            b = head
            while b is not last_pair:
                work += 1
                children.append(b.items.popleft())
                nxt = b.next
                if not b.items:
                    unlink(b)
                b = nxt
            work += 2
            children.append(last_pair.items.popleft())
            children.append(last_pair.items.popleft())
            after_pair = last_pair.next
            if not last_pair.items:
                unlink(last_pair)

            # the passed-over tail of the run waits for the next phase
            b = after_pair
            stop = run_end.next
            while b is not stop:
                for it in b.items:
                    deferred.add(id(it))
                    work += 1
                nxt = b.next
                unlink(b)
                b = nxt

            v = TreeNode(
                exponent=children[0].exponent - 1,
                children=children,
                oracle=RegularOracle(len(children)),
                creation_seq=seq,
                min_index=min(c.min_index for c in children),
            )
            seq += 1
            assert _scaled_regular(v), [c.exponent for c in v.children]
            if virtuals:
                assert virtuals[-1].exponent <= v.exponent, "virtual rates must fall"
            virtuals.append(v)

        # next phase list: deferred items keep snapshot (sorted) order and the
        # virtuals were created with weakly rising exponents, so one linear
        # merge rebuilds the sorted list without re-sorting
        kept = [it for it in snapshot if id(it) in deferred]
        work += len(snapshot)
        merged = []
        i = j = 0
        while i < len(kept) and j < len(virtuals):
            work += 1
            a, v = kept[i], virtuals[j]
            if (a.exponent, a.creation_seq, a.min_index) <= (
                v.exponent,
                v.creation_seq,
                v.min_index,
            ):
                merged.append(a)
                i += 1
            else:
                merged.append(v)
                j += 1
        merged.extend(kept[i:])
        merged.extend(virtuals[j:])
        work += len(merged) - (i + j)
        assert len(merged) < len(snapshot), "every phase must shrink the list"
        items = merged

    root = items[0]
    assert root.exponent == 0
    assert n == 1 or not root.is_leaf

    assert phases <= n.bit_length(), "phase count exceeded floor(log2 n) + 1"
    return OracleTree(
        root=root,
        leaves=leaves,
        transformed=tuple(rates),
        phase_count=phases,
        build_work=work,
    )


class M2Oracle:
    """round -> boost -> tree pipeline; query() always trims some bamboo."""

    def __init__(self, instance: Instance):
        self.instance = instance
        self.rounded = tuple(round_rates(instance))
        self.transformed = tuple(boost_rates(list(self.rounded)))
        self.tree = build_tree(self.transformed)

    @property
    def transformed_rates(self) -> tuple[Fraction, ...]:
        return tuple(d.value for d in self.transformed)

    def query(self) -> TrimDecision:
        return trim(self.tree.query())


def build_m2(instance: Instance) -> M2Oracle:
    return M2Oracle(instance)
