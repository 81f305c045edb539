"""Exact arithmetic and the garden instance model.

Everything downstream (oracles, simulator, CLI) works in exact rational
arithmetic; nothing in the library ever rounds.  Days are 0-based: a bamboo
last cut at the end of day d' stands at (d - d') * rate at the end of day d,
before that day's cut.  A bamboo that was never cut is encoded with
last_cut_day = -1 so the same formula gives (d + 1) * rate.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

# Exact rational scalar used for rates, heights, thresholds, and bounds.
Rational = Fraction

__all__ = [
    "Rational",
    "Instance",
    "TrimDecision",
    "trim",
    "DO_NOTHING",
    "canonicalize",
    "height",
    "floor_log2",
    "ceil_div",
    "parse_rational",
    "format_rational",
    "instance_to_json",
    "instance_from_json",
    "load_instance",
    "save_instance",
]


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational from a "p/q" or integer string."""
    return Fraction(str(text).strip())


def format_rational(value: Fraction) -> str:
    """Render a rational as "p/q" (or "p" when the denominator is 1)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def floor_log2(value: Fraction) -> int:
    """The unique e with 2**e <= value < 2**(e+1), for value > 0.

    Computed from integer bit lengths and one exact cross-comparison; floats
    would misclassify values near powers of two.
    """
    value = Fraction(value)
    if value <= 0:
        raise ValueError(f"floor_log2 needs a positive value, got {value}")
    p, q = value.numerator, value.denominator
    e = p.bit_length() - q.bit_length()
    # Candidate e is exact or one too high; test 2**e <= p/q exactly.
    if e >= 0:
        ok = (q << e) <= p
    else:
        ok = q <= (p << -e)
    return e if ok else e - 1


def ceil_div(numer: Fraction, denom: Fraction) -> int:
    """Exact ceil(numer / denom) for rationals, denom > 0."""
    denom = Fraction(denom)
    if denom <= 0:
        raise ValueError(f"ceil_div needs a positive denominator, got {denom}")
    return math.ceil(Fraction(numer) / denom)


def height(rate: Fraction, last_cut_day: int, day: int) -> Fraction:
    """Exact height of a bamboo at the end of `day`, before that day's cut."""
    if day < last_cut_day:
        raise ValueError(f"day {day} precedes last cut day {last_cut_day}")
    return (day - last_cut_day) * rate


@dataclass(frozen=True)
class TrimDecision:
    """One day's scheduling answer: trim bamboo `index` (1-based, canonical
    order) or, with index None, do nothing."""

    index: int | None

    @property
    def is_trim(self) -> bool:
        return self.index is not None


DO_NOTHING = TrimDecision(None)


def trim(index: int) -> TrimDecision:
    return TrimDecision(index)


@dataclass(frozen=True)
class Instance:
    """A garden in canonical form: rates nonincreasing, sum at most 1.

    original_index[i] is the 1-based position of canonical bamboo i+1 in the
    caller's input list (stable for equal rates).
    """

    rates: tuple[Fraction, ...]
    original_index: tuple[int, ...]
    sum_is_one: bool

    @property
    def n(self) -> int:
        return len(self.rates)

    def scaled(self) -> tuple[int, tuple[int, ...]]:
        """Common denominator S and numerators so rates[i] = numerators[i]/S."""
        s = 1
        for r in self.rates:
            s = s * r.denominator // math.gcd(s, r.denominator)
        return s, tuple(r.numerator * (s // r.denominator) for r in self.rates)


def canonicalize(raw_rates: Sequence[Fraction] | Iterable[Fraction]) -> Instance:
    """Stable-sort rates nonincreasing and validate the garden contract."""
    rates = [Fraction(r) for r in raw_rates]
    if not rates:
        raise ValueError("an instance needs at least one bamboo")
    for r in rates:
        if r <= 0:
            raise ValueError(f"growth rates must be positive, got {format_rational(r)}")
    total = sum(rates)
    if total > 1:
        raise ValueError(f"growth rates sum to {format_rational(total)} > 1")
    order = sorted(range(len(rates)), key=lambda i: -rates[i])  # stable
    return Instance(
        rates=tuple(rates[i] for i in order),
        original_index=tuple(i + 1 for i in order),
        sum_is_one=total == 1,
    )


def instance_to_json(instance: Instance) -> str:
    return json.dumps(
        {
            "rates": [format_rational(r) for r in instance.rates],
            "original_index": list(instance.original_index),
        },
        indent=2,
    )


def instance_from_json(text: str) -> Instance:
    data = json.loads(text)
    if "rates" not in data:
        raise ValueError("instance file needs a 'rates' key")
    return canonicalize([parse_rational(s) for s in data["rates"]])


def load_instance(path) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return instance_from_json(fh.read())


def save_instance(instance: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(instance_to_json(instance) + "\n")
