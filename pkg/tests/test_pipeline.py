import itertools
import random
from fractions import Fraction

import pytest

from knapsack_fptas.core import COORD_LIMIT, Instance, Item, StepFn, verify_approx
from knapsack_fptas.oracles import brute_force_opt, exact_dp, exact_profit_fn
from knapsack_fptas.pipeline import (
    CapParams,
    SortedItems,
    core_band_solver,
    diversity_prefix,
    find_i_delta,
    greedy_profile,
    knapsack_fptas,
    recursion_depth,
    solve,
    solve_additive,
    solve_capped,
)

GRAIN = Fraction(1, 8)


def sorted_items(pairs, grain=GRAIN):
    return SortedItems.build([Item(p, w) for p, w in pairs], grain)


def random_band_items(r, n, inv=8):
    return [Item(r.randint(inv, 2 * inv - 1), r.randint(1, 30)) for _ in range(n)]


def test_sorting_by_efficiency_with_ties():
    S = sorted_items([(1, 2), (2, 2), (2, 4), (4, 8), (3, 1)])
    assert list(zip(S.profits, S.weights)) == [(3, 1), (2, 2), (1, 2), (2, 4), (4, 8)]


def brute_diversity(profits, i, removable):
    prefix = profits[:i]
    best = len(set(prefix))
    for k in range(1, min(removable, i) + 1):
        for J in itertools.combinations(range(i), k):
            left = {prefix[j] for j in range(i) if j not in J}
            best = min(best, len(left))
    return best


def test_diversity_all_equal():
    S = sorted_items([(8, 1)] * 5)
    for m in (1, 2):
        for i in range(2 * m + 1):
            assert diversity_prefix(S, i, 2 * m)[0] == 0
    assert diversity_prefix(S, 5, 2)[0] == 1


def test_diversity_one_removal():
    # profits 1.0 x3, 1.2, 1.4 in grains of 1/10
    S = SortedItems((10, 10, 10, 12, 14), (1, 1, 1, 1, 1), Fraction(1, 10))
    D, J = diversity_prefix(S, 5, 1)
    assert D == 2 and len(J) == 1
    assert diversity_prefix(S, 5, 2)[0] == 1


@pytest.mark.parametrize("seed", range(60))
def test_diversity_matches_brute_force(seed):
    r = random.Random(seed)
    profits = tuple(r.randint(8, 11) for _ in range(r.randint(1, 12)))
    S = SortedItems(profits, tuple(1 for _ in profits), GRAIN)
    removable = r.randint(0, 6)
    for i in range(len(profits) + 1):
        D, J = diversity_prefix(S, i, removable)
        assert D == brute_diversity(profits, i, removable)
        assert len(J) <= removable
        assert len({profits[j] for j in range(i) if j not in J}) == D


def test_find_i_delta_examples():
    S = sorted_items([(8, 1), (8, 1), (9, 3), (10, 9)])
    assert find_i_delta(S, 3, 0) == 4
    # with no removals and no classes allowed only the empty prefix qualifies
    assert find_i_delta(S, 0, 0) == 0


@pytest.mark.parametrize("seed", range(40))
def test_find_i_delta_is_the_last_admissible_prefix(seed):
    r = random.Random(seed)
    S = SortedItems.build(random_band_items(r, r.randint(1, 20)), GRAIN)
    delta, removable = r.randint(0, 4), r.randint(0, 4)
    i = find_i_delta(S, delta, removable)
    assert diversity_prefix(S, i, removable)[0] <= delta
    if i < len(S):
        assert diversity_prefix(S, i + 1, removable)[0] > delta


def test_recursion_depth_grows_slowly():
    assert recursion_depth(1) == 3
    assert recursion_depth(64) >= recursion_depth(2)


def test_capped_base_case_is_best_single_item():
    S = sorted_items([(8, 3), (11, 5), (15, 2)])
    params = CapParams(1, Fraction(3, 2), 3, Fraction(1, 8), GRAIN)
    f = solve_capped(S, params)
    # values above 1.5 are not allowed in the base case
    assert f.value(2) == 0 and f.value(3) == 1 and f.value(5) == Fraction(11, 8)


@pytest.mark.parametrize("seed", range(60))
def test_additive_band_against_exact(seed):
    r = random.Random(seed)
    items = random_band_items(r, r.randint(1, 16))
    m = r.choice((1, 2, 4))
    eps = r.choice((Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)))
    f = solve_additive(SortedItems.build(items, GRAIN), m, eps)
    exact = exact_profit_fn(items, GRAIN)
    assert verify_approx(f, exact, 0, m * eps / GRAIN, t=2 * m / GRAIN)


def test_additive_identical_profits():
    items = [Item(12, w) for w in (3, 1, 4, 1, 5, 9, 2, 6)]
    eps = Fraction(1, 4)
    f = solve_additive(SortedItems.build(items, GRAIN), 2, eps)
    exact = exact_profit_fn(items, GRAIN)
    for x in exact.xs:
        assert f.value(x) >= (1 - eps) * min(exact.value(x), 4)


def test_additive_empty():
    assert solve_additive(SortedItems.build([], GRAIN), 1, Fraction(1, 4)) == StepFn.constant(0, GRAIN)


def test_core_band_single_item_exact():
    S = sorted_items([(12, 5)])
    f = core_band_solver(S, Fraction(1, 8))
    assert f.value(4) == 0 and f.value(5) == Fraction(3, 2)


@pytest.mark.parametrize("seed", range(40))
def test_core_band_relative_error(seed):
    r = random.Random(seed)
    eps = Fraction(1, 8)
    items = random_band_items(r, 12)
    f = core_band_solver(SortedItems.build(items, GRAIN), eps)
    exact = exact_profit_fn(items, GRAIN)
    assert verify_approx(f, exact, eps, 0, t=(2 / eps) / GRAIN)


def test_core_band_values_on_band_boundaries():
    # unit profits make every achievable value an integer, including each band edge m
    eps = Fraction(1, 4)
    items = [Item(8, w) for w in range(1, 11)]
    f = core_band_solver(SortedItems.build(items, GRAIN), eps)
    exact = exact_profit_fn(items, GRAIN)
    for x in exact.xs:
        v = exact.value(x)
        if v <= 2 / eps:
            assert f.value(x) >= (1 - eps) * v


def test_greedy_examples():
    assert greedy_profile(sorted_items([(12, 4)])).points() == [(0, 0), (4, 12)]
    S = SortedItems.build([Item(2, 1), Item(1, 1)])
    assert greedy_profile(S).value(2) == 3


@pytest.mark.parametrize("seed", range(60))
def test_greedy_within_two(seed):
    r = random.Random(seed)
    items = [Item(r.randint(16, 32), r.randint(1, 30)) for _ in range(r.randint(1, 16))]
    grain = Fraction(1, 16)
    assert verify_approx(greedy_profile(SortedItems.build(items, grain)), exact_profit_fn(items, grain), 0, 32)


def test_fptas_small_examples():
    inst = Instance([(2, 3), (3, 4)], 4)
    for eps in (Fraction(1, 2), Fraction(1, 10), Fraction(1, 20)):
        assert knapsack_fptas(inst, eps).sol == 3
    assert knapsack_fptas(Instance([(2, 3)], 0), Fraction(1, 2)).sol == 0
    assert knapsack_fptas(Instance([], 10), Fraction(1, 2)).sol == 0


def test_fptas_zero_weight_and_oversized_items():
    inst = Instance([(5, 0), (7, 100), (3, 2)], 4)
    assert knapsack_fptas(inst, Fraction(1, 10)).sol == 8


def test_fptas_rejects_bad_arguments():
    with pytest.raises(ValueError):
        knapsack_fptas(Instance([(1, 1)], 1), 1)
    with pytest.raises(ValueError):
        knapsack_fptas(Instance([(1, 1)], 1), 0)
    with pytest.raises(ValueError):
        knapsack_fptas(Instance([(COORD_LIMIT, 1)], 1), Fraction(1, 2))


@pytest.mark.parametrize("seed", range(40))
def test_fptas_random_small(seed):
    r = random.Random(seed)
    n = r.randint(1, 14)
    inst = Instance([(r.randint(1, 200), r.randint(1, 50)) for _ in range(n)], r.randint(0, 200))
    opt = brute_force_opt(inst)
    for eps in (Fraction(1, 2), Fraction(1, 10), Fraction(1, 20)):
        sol = knapsack_fptas(inst, eps).sol
        assert (1 - eps) * opt <= sol <= opt


def test_report_ledger_and_reference():
    inst = Instance([(2, 3), (3, 4), (4, 5)], 7)
    rep = solve(inst, Fraction(1, 10), reference=exact_dp(inst))
    assert rep.lower_ok is True
    total = Fraction(1)
    for _, mult, add in rep.budget_ledger:
        assert add == 0
        total *= mult
    assert total >= 1 - Fraction(1, 10)
