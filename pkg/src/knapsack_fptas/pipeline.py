"""The full approximation scheme for 0/1 knapsack.

Profits are handled in integer grains throughout. Within one profit-scale
group every profit lies in [1, 2) once divided by the group's power of two,
and is rounded down to a multiple of 1/E for an integer E.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional, Sequence

from .convolution import build_class_function, maxplus_at, merge_dc, merge_profit_classes
from .core import (
    COORD_LIMIT,
    ApproxReport,
    Instance,
    Item,
    StepFn,
    common_grain,
    pointwise_max,
    round_down_geometric,
)
from .sparse import solve_sparse

# fractions of eps spent on: discarding tiny items, rounding profits,
# the per-group band solver, merging the groups
DISCARD_SHARE = Fraction(1, 8)
ROUND_SHARE = Fraction(1, 8)
BAND_SHARE = Fraction(1, 2)
MERGE_SHARE = Fraction(1, 4)


def _efficiency_cmp(a, b) -> int:
    # a, b = (profit, weight, index); higher profit/weight first
    lhs = a[0] * b[1]
    rhs = b[0] * a[1]
    if lhs != rhs:
        return -1 if lhs > rhs else 1
    if a[1] != b[1]:
        return -1 if a[1] < b[1] else 1
    return -1 if a[2] < b[2] else (1 if a[2] > b[2] else 0)


@dataclass(frozen=True)
class SortedItems:
    """Items in non-increasing profit/weight order; profits are grain counts."""

    profits: tuple
    weights: tuple
    grain: Fraction = Fraction(1)

    @classmethod
    def build(cls, items: Sequence, grain=Fraction(1)) -> "SortedItems":
        rows = [(it.profit, it.weight, i) if isinstance(it, Item) else (it[0], it[1], i)
                for i, it in enumerate(items)]
        rows.sort(key=cmp_to_key(_efficiency_cmp))
        return cls(tuple(r[0] for r in rows), tuple(r[1] for r in rows), Fraction(grain))

    def __len__(self) -> int:
        return len(self.profits)

    def items(self, idx=None) -> list:
        idx = range(len(self.profits)) if idx is None else idx
        return [Item(self.profits[i], self.weights[i]) for i in idx]

    def suffix(self, start: int) -> "SortedItems":
        return SortedItems(self.profits[start:], self.weights[start:], self.grain)


@dataclass(frozen=True)
class CapParams:
    m: int
    B: Fraction
    k: int
    budget: Fraction
    eps: Fraction
    c_exchange: Fraction = Fraction(1)

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("negative recursion depth")


def diversity_prefix(S: SortedItems, i: int, removable: int):
    """D(i) and a minimizing J: drop whole least-frequent profit values while ``removable`` allows."""
    counts = Counter(S.profits[:i])
    budget = removable
    removed = set()
    for value, cnt in sorted(counts.items(), key=lambda t: (t[1], t[0])):
        if cnt > budget:
            break
        budget -= cnt
        removed.add(value)
    J = [j for j in range(i) if S.profits[j] in removed]
    return len(counts) - len(removed), J


def find_i_delta(S: SortedItems, delta: int, removable: int) -> int:
    """Largest i with D(i) <= delta (D is non-decreasing in i)."""
    lo, hi = 0, len(S)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if diversity_prefix(S, mid, removable)[0] <= delta:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _staircase(points, grain, x_hi=None) -> StepFn:
    """StepFn from (x, y) pairs with non-decreasing x; keeps the running maximum."""
    xs: list = []
    ys: list = []
    for x, y in points:
        if ys and y <= ys[-1]:
            continue
        if xs and x == xs[-1]:
            ys[-1] = y
            continue
        xs.append(x)
        ys.append(y)
    if not xs:
        return StepFn.constant(0, grain)
    if xs[0] != 0:
        xs.insert(0, 0)
        ys.insert(0, 0)
    return StepFn(tuple(xs), tuple(ys), Fraction(grain), x_hi)


def _cap_grains(B: Fraction, grain: Fraction) -> int:
    return math.ceil(B / grain)


def _to_grain(fs: Sequence[StepFn]) -> list:
    g = common_grain(fs)
    return [f.with_grain(g) for f in fs]


def _single_item_profile(S: SortedItems, B: Fraction) -> StepFn:
    cap = B / S.grain
    pts = sorted((w, p) for p, w in zip(S.profits, S.weights) if p <= cap)
    return _staircase([(0, 0)] + pts, S.grain)


def solve_capped(S: SortedItems, params: CapParams) -> StepFn:
    """Under-approximation of f_S with additive error ``params.budget`` where f_S <= B.

    The prefix up to i^Δ splits into at most 2m leftover items (sparse
    solver) and at most Δ equal-profit classes; the suffix only contributes
    a small amount to any solution worth at most B, so it is solved
    recursively with a much smaller cap.
    """
    grain = S.grain
    B, eps, A = params.B, params.eps, params.budget
    if len(S) == 0:
        return StepFn.constant(0, grain)
    if B < 2:
        return _single_item_profile(S, B)
    if params.k == 0:
        raise RuntimeError("recursion depth exhausted before the cap dropped below 2")
    c = params.c_exchange
    delta = math.ceil((1 / eps) / math.sqrt(B) * math.log(2 / eps))
    # keep B' <= B/2 so the recursion always makes progress
    delta = max(delta, math.ceil(2 * c / (eps * B)), 1)
    B_next = c / (eps * delta)

    i_delta = find_i_delta(S, delta, 2 * params.m)
    _, J = diversity_prefix(S, i_delta, 2 * params.m)
    cap = _cap_grains(B, grain)
    parts = []

    if J:
        parts.append(solve_sparse(S.items(J), A / (4 * len(J)), grain))

    in_J = set(J)
    by_value: dict = {}
    for j in range(i_delta):
        if j not in in_J:
            by_value.setdefault(S.profits[j], []).append(S.weights[j])
    if by_value:
        classes = [build_class_function(ws, p, cap) for p, ws in sorted(by_value.items())]
        parts.append(merge_profit_classes(classes, cap, A / (8 * B), grain))

    if i_delta < len(S):
        sub = CapParams(params.m, B_next, params.k - 1, A / 2, eps, c)
        parts.append(solve_capped(S.suffix(i_delta), sub))

    if not parts:
        return StepFn.constant(0, grain)
    parts = _to_grain(parts)
    cap = _cap_grains(B, parts[0].grain)
    if len(parts) == 1:
        return parts[0].capped(cap)
    return merge_dc(parts, A / (8 * B), cap=cap)


def recursion_depth(m: int) -> int:
    return math.ceil(math.log2(max(1.0, math.log2(2 * m)))) + 3


def solve_additive(S: SortedItems, m: int, eps, c_exchange=Fraction(1)) -> StepFn:
    """Under-approximation of f_S with additive error m*eps wherever f_S <= 2m."""
    eps = Fraction(eps)
    if len(S) == 0:
        return StepFn.constant(0, S.grain)
    params = CapParams(m, Fraction(2 * m), recursion_depth(m), m * eps, eps, Fraction(c_exchange))
    return solve_capped(S, params)


def core_band_solver(S: SortedItems, eps, c_exchange=Fraction(1)) -> StepFn:
    """(1 - eps)-approximation of f_S for values up to 2/eps (profits in [1, 2))."""
    eps = Fraction(eps)
    bands = []
    m = 1
    while m <= 2 / eps:
        bands.append(solve_additive(S, m, eps, c_exchange))
        m *= 2
    return pointwise_max(_to_grain(bands))


def greedy_profile(S: SortedItems) -> StepFn:
    """Prefix sums in efficiency order: feasible, and within max profit of optimal."""
    pts = [(0, 0)]
    x = y = 0
    for p, w in zip(S.profits, S.weights):
        x += w
        y += p
        pts.append((x, y))
    return _staircase(pts, S.grain)


def _group_function(S: SortedItems, eps, capacity: int, c_exchange) -> StepFn:
    band = core_band_solver(S, eps, c_exchange)
    greedy = greedy_profile(S)
    f = pointwise_max(_to_grain([band, greedy]))
    return f.truncated(capacity) if f.xs[0] <= capacity else StepFn.constant(0, f.grain, 0, capacity)


def knapsack_fptas(inst: Instance, eps, c_exchange=Fraction(1)) -> ApproxReport:
    """Value SOL with (1 - eps) * OPT <= SOL <= OPT."""
    start = time.perf_counter()
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    W = inst.capacity
    for it in inst.items:
        if it.profit >= COORD_LIMIT or it.weight >= COORD_LIMIT:
            raise ValueError("profit or weight exceeds the supported integer width")
    if W >= COORD_LIMIT:
        raise ValueError("capacity exceeds the supported integer width")
    ledger = []

    free = sum(it.profit for it in inst.items if it.weight == 0)
    items = [it for it in inst.items if 0 < it.weight <= W]
    report = ApproxReport(Fraction(free), eps, inst.n, W, budget_ledger=ledger)
    if not items:
        report.elapsed = time.perf_counter() - start
        return report
    n = len(items)
    if n > eps ** -4:
        ledger.append(("note: n exceeds eps^-4, running time bound not claimed", Fraction(1), Fraction(0)))

    eps_discard = eps * DISCARD_SHARE
    pmax = max(it.profit for it in items)
    # every kept item fits on its own, so OPT >= pmax and the discarded total is <= eps_discard * OPT
    items = [it for it in items if it.profit * n > eps_discard * pmax]
    ledger.append(("discard tiny profits", 1 - eps_discard, Fraction(0)))

    E = math.ceil(1 / (eps * ROUND_SHARE))
    ledger.append(("round profits to 1/E", 1 - Fraction(1, E), Fraction(0)))
    groups: dict = {}
    for it in items:
        j = it.profit.bit_length() - 1
        groups.setdefault(j, []).append(Item((it.profit * E) >> j, it.weight))

    eps_band = eps * BAND_SHARE
    ledger.append(("band solver per group", 1 - eps_band, Fraction(0)))
    fs = []
    for j in sorted(groups):
        S = SortedItems.build(groups[j], Fraction(1, E))
        f = _group_function(S, eps_band, W, c_exchange)
        # back to original profit units
        fs.append(StepFn(f.xs, f.ys, f.grain * (1 << j), f.x_hi))

    eps_merge = eps * MERGE_SHARE
    leaf_eps = eps_merge / 4
    tree_eps = eps_merge - leaf_eps
    ledger.append(("merge groups", (1 - leaf_eps) * (1 - tree_eps), Fraction(0)))
    fs = _to_grain([round_down_geometric(f, leaf_eps) for f in fs])
    if len(fs) == 1:
        value = fs[0].value(W)
    else:
        half = len(fs) // 2
        left = merge_dc(fs[:half], tree_eps) if half > 1 else fs[0]
        right = merge_dc(fs[half:], tree_eps) if len(fs) - half > 1 else fs[half]
        left, right = _to_grain([left, right])
        value = maxplus_at(left, right, W) * left.grain
    report.sol = Fraction(free) + value
    report.elapsed = time.perf_counter() - start
    return report


def solve(inst: Instance, eps, reference: Optional[int] = None) -> ApproxReport:
    rep = knapsack_fptas(inst, eps)
    if reference is not None:
        rep.reference = Fraction(reference)
    return rep
