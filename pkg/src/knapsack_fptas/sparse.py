"""Additive approximation of the profit function of a few items with profits in [1, 2).

The items sit at the leaves of a balanced binary tree. Going up one level,
each child function is turned into a staircase point set, sparsified with
``reduce`` and combined with its sibling on a grid of spacing sigma, and the
result is rounded up to a grid twice as coarse. The sparsification error does
not pile up across the nodes of a level, so the total overestimate after K
levels is at most K * (delta + N/2) units. Subtracting that slack at the root
gives an under-approximation.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Sequence

from . import kernels
from .core import Item, StepFn


@dataclass(frozen=True)
class SparsePlan:
    """Integer parameters of one solve: everything is measured in units of 1/units_per_value."""

    n: int
    depth: int
    leaves: int
    units_per_value: int
    delta: int
    slack: int


def plan(n: int, eps: Fraction, grain: Fraction) -> SparsePlan:
    depth = (n - 1).bit_length() if n > 1 else 0
    leaves = 1 << depth
    slack_units = depth * leaves
    # units_per_value must make every profit integral and keep slack / units <= n * eps
    den = grain.denominator
    need = Fraction(slack_units) / (n * eps) if slack_units else Fraction(1)
    units = den * max(1, ceil(need / den))
    return SparsePlan(n, depth, leaves, units, max(1, leaves // 2), slack_units)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("KNAP_THREADS", "1")))
    except ValueError:
        return 1


def level_merge(fa, fb, sigma: int, delta: int):
    """Merge two sibling functions given as (xs, ys) breakpoint lists.

    Both inputs carry values that are multiples of sigma; the output carries
    multiples of 2 * sigma and over-estimates the exact max-plus convolution
    by at most delta + sigma (delta shared across the level).
    """
    for y in fa[1]:
        if y % sigma:
            raise ValueError("left operand is off the sigma grid")
    for y in fb[1]:
        if y % sigma:
            raise ValueError("right operand is off the sigma grid")
    ka, kb = len(fa[0]), len(fb[0])
    levels = (fa[1][-1] + fb[1][-1]) // sigma
    if ka * kb <= max(EXACT_PAIRS, levels // 4):
        return _exact_merge(fa, fb, 2 * sigma)
    return kernels.level_merge(fa[0], fa[1], fb[0], fb[1], sigma, delta)


# below this many breakpoint pairs the exact staircase convolution is cheaper
# than sampling every level, and it adds no sparsification error
EXACT_PAIRS = 256


def _exact_merge(fa, fb, step: int):
    xs, ys = kernels.maxplus_steps(fa[0], fa[1], fb[0], fb[1])
    out_x: list = []
    out_y: list = []
    for x, y in zip(xs, ys):
        y = -(-y // step) * step
        if out_y and y <= out_y[-1]:
            continue
        out_x.append(int(x))
        out_y.append(int(y))
    return out_x, out_y


def solve_sparse(items: Sequence[Item], eps, grain=None) -> StepFn:
    """Return f~ with f_I - n*eps <= f~ <= f_I on every x >= 0.

    ``items`` carry profits as integer multiples of ``grain`` (default ``eps``),
    intended to lie in [1, 2) in value. ``eps`` is the per-item additive
    budget. The result has grain ``1/units_per_value`` and extends to +inf.
    """
    eps = Fraction(eps)
    grain = eps if grain is None else Fraction(grain)
    items = list(items)
    n = len(items)
    if n == 0:
        return StepFn.constant(0, grain)
    p = plan(n, eps, grain)
    scale = grain * p.units_per_value
    assert scale.denominator == 1
    scale = scale.numerator
    total_w = sum(it.weight for it in items)

    funcs = []
    for it in items:
        y = it.profit * scale
        if it.weight > 0:
            funcs.append(([0, it.weight], [0, y]))
        else:
            funcs.append(([0], [y]))
    for _ in range(p.leaves - n):
        funcs.append(([0, total_w + 1], [0, p.units_per_value]))

    workers = _workers()
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        for level in range(p.depth - 1, -1, -1):
            sigma = 1 << (p.depth - level - 1)
            pairs = [(funcs[2 * j], funcs[2 * j + 1]) for j in range(len(funcs) // 2)]
            if pool is not None and len(pairs) > 1:
                funcs = list(pool.map(lambda ab: level_merge(ab[0], ab[1], sigma, p.delta), pairs))
            else:
                funcs = [level_merge(a, b, sigma, p.delta) for a, b in pairs]
    finally:
        if pool is not None:
            pool.shutdown()

    xs, ys = funcs[0]
    out_x: list = []
    out_y: list = []
    for x, y in zip(xs, ys):
        if x > total_w:
            break
        v = y - p.slack
        if v < 0:
            v = 0
        if out_y and v <= out_y[-1]:
            continue
        out_x.append(int(x))
        out_y.append(int(v))
    return StepFn(tuple(out_x), tuple(out_y), Fraction(1, p.units_per_value), None)
