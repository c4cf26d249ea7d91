import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from knapsack_fptas.convolution import (
    UniformFn,
    build_class_function,
    maxplus_at,
    maxplus_naive,
    merge_dc,
    merge_profit_classes,
    smawk_concave_maxplus,
)
from knapsack_fptas.core import NEG_INF, Item, StepFn, eval_step, round_down_geometric, verify_approx
from knapsack_fptas.oracles import exact_profit_fn
from knapsack_fptas.suites import brute_maxplus, concave_case

from strategies import stepfns


def split_max(f, g, x):
    best = NEG_INF
    for xf in range(x + 1):
        a, b = eval_step(f, xf), eval_step(g, x - xf)
        if a != NEG_INF and b != NEG_INF:
            best = max(best, a + b)
    return best


@given(stepfns(), stepfns())
def test_maxplus_naive_matches_split_enumeration(f, g):
    h = maxplus_naive(f, g)
    for x in range(0, 130):
        assert eval_step(h, x) == split_max(f, g, x)


def test_maxplus_small_example():
    f = StepFn((0, 1), (0, 4))
    h = maxplus_naive(f, f)
    assert h.points() == [(0, 0), (1, 4), (2, 8)]


def test_maxplus_wide_values_use_exact_arithmetic():
    big = 1 << 70
    f = StepFn((0, 1), (0, big))
    assert maxplus_naive(f, f).ys == (0, big, 2 * big)


def test_maxplus_rejects_mixed_grains():
    with pytest.raises(ValueError):
        maxplus_naive(StepFn((0,), (0,), Fraction(1, 2)), StepFn((0,), (0,)))


@given(stepfns(), stepfns(), st.integers(0, 130))
def test_maxplus_at_matches_full_convolution(f, g, x):
    assert maxplus_at(f, g, x) == eval_step(maxplus_naive(f, g), x)


def test_smawk_examples():
    assert smawk_concave_maxplus([0, 3, 5, 6], [0, 4, 5]) == [0, 4, 7, 9, 10, 11]
    b = [2, -1, 7, 3]
    # with a flat a of length 3 each output is a sliding-window maximum of b
    window = [max(b[max(0, k - 2): k + 1]) for k in range(len(b) + 2)]
    assert smawk_concave_maxplus([0, 0, 0], b) == window == [2, 2, 7, 7, 7, 3]


def test_smawk_handles_unreachable_entries():
    assert smawk_concave_maxplus([0, 1], [NEG_INF, 5]) == [NEG_INF, 5, 6]
    assert smawk_concave_maxplus([0], [NEG_INF]) == [NEG_INF]


def test_smawk_rejects_non_concave():
    with pytest.raises(ValueError):
        smawk_concave_maxplus([0, 1, 3], [0])


@pytest.mark.parametrize("seed", range(200))
def test_smawk_random_against_brute_force(seed):
    a, b = concave_case(random.Random(seed), 50)
    assert smawk_concave_maxplus(a, b) == brute_maxplus(a, b)


def test_merge_dc_single_function_rounds_down():
    f = StepFn((0, 1, 2), (0, 10, 11))
    assert merge_dc([f], Fraction(1, 10)) == round_down_geometric(f, Fraction(1, 10))


def test_merge_dc_empty_is_zero():
    assert merge_dc([], Fraction(1, 2)) == StepFn.constant(0)


@given(stepfns(top=500), stepfns(top=500))
def test_merge_dc_two_functions(f, g):
    eps = Fraction(1, 10)
    assert verify_approx(merge_dc([f, g], eps), maxplus_naive(f, g), eps, 0)


def test_merge_dc_sixteen_functions_error_compounds_per_level():
    r = random.Random(16)
    eps = Fraction(1, 10)
    fs = []
    for _ in range(16):
        xs = sorted(r.sample(range(30), 4))
        ys = sorted(r.sample(range(1, 300), 4))
        fs.append(StepFn(tuple(xs), tuple(ys)))
    exact = fs[0]
    for f in fs[1:]:
        exact = maxplus_naive(exact, f)
    allowed = 1 - (1 - eps / 4) ** 4
    assert verify_approx(merge_dc(fs, eps), exact, allowed, 0)


def test_merge_dc_cap_clips():
    f = StepFn((0, 1), (0, 100))
    out = merge_dc([f, f], Fraction(1, 10), cap=50)
    assert out.ys[-1] <= 50


def test_build_class_function_example():
    u = build_class_function([4, 1, 2], 1, 2)
    assert u.weights == (1, 2)
    assert u.to_stepfn().points() == [(0, 0), (1, 1), (3, 2)]


def test_build_class_function_single_weight():
    assert build_class_function([5], 3, 10).to_stepfn().points() == [(0, 0), (5, 3)]


def test_uniform_fn_validation():
    with pytest.raises(ValueError):
        UniformFn(0, (1,), 5)
    with pytest.raises(ValueError):
        UniformFn(1, (2, 1), 5)


def test_merge_profit_classes_single_class_is_exact():
    u = build_class_function([3, 1, 2], 2, 5)
    assert merge_profit_classes([u], 5, Fraction(1, 4)).points() == [(0, 0), (1, 2), (3, 4), (6, 5)]


@pytest.mark.parametrize("seed", range(40))
def test_merge_profit_classes_same_profit_is_exact(seed):
    r = random.Random(seed)
    p = r.randint(1, 4)
    wa = [r.randint(1, 20) for _ in range(r.randint(1, 6))]
    wb = [r.randint(1, 20) for _ in range(r.randint(1, 6))]
    cap = 10**6
    got = merge_profit_classes([build_class_function(wa, p, cap), build_class_function(wb, p, cap)],
                               cap, Fraction(1, 4))
    assert got == exact_profit_fn([Item(p, w) for w in wa + wb])


@pytest.mark.parametrize("seed", range(40))
def test_merge_profit_classes_eight_classes(seed):
    r = random.Random(seed)
    eps = Fraction(1, 4)
    B = 20
    raw = [(r.randint(1, 3), [r.randint(1, 15) for _ in range(r.randint(1, 4))]) for _ in range(8)]
    got = merge_profit_classes([build_class_function(ws, p, B) for p, ws in raw], B, eps)
    exact = exact_profit_fn([Item(p, w) for p, ws in raw for w in ws]).capped(B)
    assert verify_approx(got, exact, eps, 0)
