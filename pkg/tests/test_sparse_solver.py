import random
from fractions import Fraction

import pytest

from knapsack_fptas import _purekernels, kernels
from knapsack_fptas.core import Item, StepFn, eval_step, verify_approx
from knapsack_fptas.oracles import exact_profit_fn
from knapsack_fptas.sparse import level_merge, plan, solve_sparse
from knapsack_fptas.suites import sparse_case


def test_single_item():
    eps = Fraction(1, 4)
    f = solve_sparse([Item(6, 3)], eps)
    assert f.value(2) == 0
    assert Fraction(5, 4) <= f.value(3) <= Fraction(3, 2)


def test_two_items():
    eps = Fraction(1, 4)
    f = solve_sparse([Item(4, 2), Item(6, 3)], eps)
    assert 2 <= f.value(5) <= Fraction(5, 2)


def test_empty_and_zero_weight():
    assert solve_sparse([], Fraction(1, 8)) == StepFn.constant(0, Fraction(1, 8))
    f = solve_sparse([Item(8, 0)], Fraction(1, 8))
    assert f.value(0) <= 1


@pytest.mark.parametrize("n", [1, 2, 3, 7, 16, 33, 100])
def test_plan_slack_within_budget(n):
    for inv in (8, 32):
        eps = Fraction(1, inv)
        p = plan(n, eps, eps)
        assert p.leaves >= n and p.leaves < 2 * max(n, 1)
        assert Fraction(p.slack, p.units_per_value) <= n * eps
        assert (eps * p.units_per_value).denominator == 1


@pytest.mark.parametrize("seed", range(120))
def test_random_against_exact(seed):
    eps, items = sparse_case(seed)
    approx = solve_sparse(items, eps)
    exact = exact_profit_fn(items, eps)
    assert verify_approx(approx, exact, 0, len(items))


def test_thirty_two_items_sixteenth():
    r = random.Random(32)
    eps = Fraction(1, 16)
    items = [Item(r.randint(16, 31), r.randint(1, 500)) for _ in range(32)]
    assert verify_approx(solve_sparse(items, eps), exact_profit_fn(items, eps), 0, 32)


def test_worker_pool_gives_same_result(monkeypatch):
    eps, items = Fraction(1, 32), [Item(32 + i, 10 + 7 * i) for i in range(20)]
    serial = solve_sparse(items, eps)
    monkeypatch.setenv("KNAP_THREADS", "4")
    assert solve_sparse(items, eps) == serial


def staircase(r, k, sigma):
    xs, ys = [0], [0]
    for _ in range(k - 1):
        xs.append(xs[-1] + r.randint(1, 9))
        ys.append(ys[-1] + sigma * r.randint(1, 6))
    return xs, ys


def test_level_merge_with_origin_is_rounded_input():
    fa = ([0, 3, 7], [0, 2, 6])
    assert level_merge(fa, ([0], [0]), 2, 1) == ([0, 3, 7], [0, 4, 8])


def test_level_merge_rejects_off_grid():
    with pytest.raises(ValueError):
        level_merge(([0, 1], [0, 3]), ([0], [0]), 2, 1)


@pytest.mark.parametrize("backend", [kernels, _purekernels], ids=["active", "python"])
@pytest.mark.parametrize("seed", range(40))
def test_level_merge_kernel_bounds(backend, seed):
    r = random.Random(seed)
    sigma = r.choice((1, 2, 4))
    delta = r.randint(1, 8)
    fa, fb = staircase(r, r.randint(2, 40), sigma), staircase(r, r.randint(2, 40), sigma)
    xs, ys = backend.level_merge(fa[0], fa[1], fb[0], fb[1], sigma, delta)
    got = StepFn(tuple(xs), tuple(ys))
    exact = kernels.maxplus_steps(*fa, *fb)
    exact = StepFn(tuple(exact[0]), tuple(exact[1]))
    assert all(y % (2 * sigma) == 0 for y in ys)
    for x in sorted(set(got.xs) | set(exact.xs)):
        e = eval_step(exact, x)
        assert e <= eval_step(got, x) <= e + delta + 2 * sigma
