"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from knapsack_fptas.core import Item, StepFn


@st.composite
def stepfns(draw, max_steps=8, span=60, top=80, bounded=None, grain=Fraction(1)):
    k = draw(st.integers(1, max_steps))
    xs = sorted(draw(st.sets(st.integers(0, span), min_size=k, max_size=k)))
    ys = sorted(draw(st.sets(st.integers(0, top), min_size=k, max_size=k)))
    if bounded is None:
        bounded = draw(st.booleans())
    x_hi = xs[-1] + draw(st.integers(0, 5)) if bounded else None
    return StepFn(tuple(xs), tuple(ys), grain, x_hi)


def items(max_n=12, p_lo=1, p_hi=50, w_hi=40):
    return st.lists(st.builds(Item, st.integers(p_lo, p_hi), st.integers(1, w_hi)),
                    min_size=1, max_size=max_n)
