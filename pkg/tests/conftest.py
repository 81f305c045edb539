"""Shared strategies: random rate vectors in the shapes the library accepts."""

from fractions import Fraction

from hypothesis import strategies as st

from bgt.core import canonicalize


@st.composite
def weight_rates(draw, min_n=1, max_n=8, sum_one=True):
    """Rates w_i / W; W = sum(w) gives an exact sum of 1, a larger W gives
    a strict undersum."""
    n = draw(st.integers(min_n, max_n))
    weights = draw(st.lists(st.integers(1, 50), min_size=n, max_size=n))
    total = sum(weights)
    if not sum_one:
        total += draw(st.integers(1, 60))
    return [Fraction(w, total) for w in weights]


@st.composite
def dyadic_rates(draw, min_n=1, max_n=10):
    """Powers of 1/2 summing to exactly 1, by repeated halving."""
    n = draw(st.integers(min_n, max_n))
    exponents = [0]
    for _ in range(n - 1):
        idx = draw(st.integers(0, len(exponents) - 1))
        e = exponents.pop(idx)
        exponents.extend((e + 1, e + 1))
    return [Fraction(1, 1 << e) for e in exponents]


@st.composite
def instances(draw, min_n=1, max_n=8, sum_one=None):
    if sum_one is None:
        sum_one = draw(st.booleans())
    kind = draw(st.integers(0, 1))
    if kind == 0:
        rates = draw(weight_rates(min_n=min_n, max_n=max_n, sum_one=sum_one))
    else:
        rates = draw(dyadic_rates(min_n=min_n, max_n=max_n))
        if not sum_one:
            rates = [r / 2 for r in rates]
    return canonicalize(rates)
