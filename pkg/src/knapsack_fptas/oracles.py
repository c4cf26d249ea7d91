"""Exact reference computations used to check the approximate algorithms."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import inf
from typing import Sequence

import numpy as np

from .core import Instance, Item, StepFn

DP_CELL_LIMIT = 10**8
PROFIT_SUM_LIMIT = 10**6


class OracleRefused(ValueError):
    """The instance is too large for the exact oracle."""


def exact_dp(inst: Instance) -> int:
    """Exact optimum by dynamic programming over the cheaper of the weight/profit axes."""
    items = [it for it in inst.items if it.weight <= inst.capacity]
    if not items:
        return 0
    n = len(items)
    W = inst.capacity
    P = sum(it.profit for it in items)
    by_weight = n * (W + 1)
    by_profit = n * (P + 1)
    if min(by_weight, by_profit) > DP_CELL_LIMIT:
        raise OracleRefused(f"DP would need {min(by_weight, by_profit)} cells")
    if by_profit <= by_weight:
        big = np.iinfo(np.int64).max // 2
        minw = np.full(P + 1, big, dtype=np.int64)
        minw[0] = 0
        top = 0
        for it in items:
            p, w = it.profit, it.weight
            top += p
            cand = minw[: top - p + 1] + w
            np.minimum(minw[p: top + 1], cand, out=minw[p: top + 1])
        ok = np.nonzero(minw <= W)[0]
        return int(ok[-1])
    best = np.zeros(W + 1, dtype=np.int64)
    for it in items:
        p, w = it.profit, it.weight
        if w == 0:
            best += p
            continue
        cand = best[: W + 1 - w] + p
        np.maximum(best[w:], cand, out=best[w:])
    return int(best[W])


def pareto_front(items: Sequence[Item]) -> list:
    """All (weight, profit) pairs not dominated by another subset, sorted by weight."""
    front = [(0, 0)]
    for it in items:
        shifted = [(w + it.weight, p + it.profit) for w, p in front]
        merged = sorted(front + shifted, key=lambda t: (t[0], -t[1]))
        front = []
        best = -1
        for w, p in merged:
            if p > best:
                front.append((w, p))
                best = p
    return front


def exact_profit_fn(items: Sequence[Item], grain=Fraction(1)) -> StepFn:
    """The exact profit function f_I(x) = max profit with total weight <= x."""
    items = [it if isinstance(it, Item) else Item(*it) for it in items]
    if len(items) > 32 and sum(it.profit for it in items) > PROFIT_SUM_LIMIT:
        raise OracleRefused("too many items for the exact profit function")
    front = pareto_front(items)
    return StepFn(tuple(w for w, _ in front), tuple(p for _, p in front), Fraction(grain), None)


def brute_force_opt(inst: Instance) -> int:
    """2^n subset enumeration (tiny instances only)."""
    best = 0
    its = inst.items
    for mask in product((0, 1), repeat=len(its)):
        w = sum(it.weight for it, b in zip(its, mask) if b)
        if w <= inst.capacity:
            best = max(best, sum(it.profit for it, b in zip(its, mask) if b))
    return best


def _edges(pts):
    if len(pts) == 1:
        return [(pts[0], pts[0])]
    return list(zip(pts, pts[1:]))


def raster_levels(Pa, Pb, sigma: int):
    """Per-level least x of R(Pa) + R(Pb) at multiples of sigma, by brute force.

    Enumerates every pair of chain segments; the sum of two segments is a
    parallelogram and the least x of its part at height >= y is attained at a
    corner or where an edge crosses height y. Returns ``(first_level, xs)``
    with levels counted in units of sigma and x rounded up.
    """
    a = list(Pa.points if hasattr(Pa, "points") else Pa)
    b = list(Pb.points if hasattr(Pb, "points") else Pb)
    lo_y = a[0][1] + b[0][1]
    hi_y = a[-1][1] + b[-1][1]
    lo = -((-lo_y) // sigma)
    hi = hi_y // sigma
    shapes = []
    for a0, a1 in _edges(a):
        for b0, b1 in _edges(b):
            c = [(a0[0] + b0[0], a0[1] + b0[1]), (a1[0] + b0[0], a1[1] + b0[1]),
                 (a1[0] + b1[0], a1[1] + b1[1]), (a0[0] + b1[0], a0[1] + b1[1])]
            shapes.append(c)
    out = []
    for lvl in range(lo, hi + 1):
        y = lvl * sigma
        best = inf
        for c in shapes:
            for k in range(4):
                p, q = c[k], c[(k + 1) % 4]
                if p[1] >= y and p[0] < best:
                    best = p[0]
                if (p[1] - y) * (q[1] - y) < 0:
                    x = p[0] + Fraction((y - p[1]) * (q[0] - p[0]), q[1] - p[1])
                    if x < best:
                        best = x
        if best == inf:
            raise AssertionError(f"level {y} not covered")
        out.append(-((-best.numerator) // best.denominator) if isinstance(best, Fraction) else best)
    return lo, out


def _chain(P):
    return list(P.points if hasattr(P, "points") else P)


def g_left_limit(P, x):
    """lim of g[P](t) as t -> x from the left (None if x is not right of the chain start)."""
    pts = _chain(P)
    best = None
    for (ax, ay), (bx, by) in zip(pts, pts[1:]):
        if ax < x <= bx:
            v = ay + Fraction((x - ax) * (by - ay), bx - ax)
            if best is None or v > best:
                best = v
    return best


def _segment_at(seg, x):
    (ax, ay), (bx, by) = seg
    if ax == bx:
        return Fraction(max(ay, by)) if x == ax else None
    if ax <= x <= bx:
        return ay + Fraction((x - ax) * (by - ay), bx - ax)
    return None


def exact_minkowski(Pa, Pb) -> list:
    """Minimal point set V with R(V) = R(Pa) + R(Pb), coordinates as exact rationals.

    Every point on the upper boundary of the sum is a boundary point of one
    set plus a vertex of the other, so the boundary is the upper envelope of
    the copies of each chain shifted by the other's vertices.
    """
    a, b = _chain(Pa), _chain(Pb)
    segs = []
    for base, shift_by in ((a, b), (b, a)):
        for sx, sy in shift_by:
            moved = [(x + sx, y + sy) for x, y in base]
            if len(moved) == 1:
                segs.append((moved[0], moved[0]))
            segs.extend(zip(moved, moved[1:]))
    xs = set()
    for (p, q) in segs:
        xs.add(Fraction(p[0]))
        xs.add(Fraction(q[0]))
    slanted = [s for s in segs if s[0][0] != s[1][0]]
    for i in range(len(slanted)):
        (ax, ay), (bx, by) = slanted[i]
        for j in range(i + 1, len(slanted)):
            (cx, cy), (dx, dy) = slanted[j]
            lo, hi = max(ax, cx), min(bx, dx)
            if lo >= hi:
                continue
            # a(x) - c(x) changes sign strictly inside (lo, hi)
            s1 = Fraction(by - ay, bx - ax)
            s2 = Fraction(dy - cy, dx - cx)
            if s1 == s2:
                continue
            x = (cy - s2 * cx - ay + s1 * ax) / (s1 - s2)
            if lo < x < hi:
                xs.add(x)
    pts: list = []
    for x in sorted(xs):
        top = max(v for v in (_segment_at(s, x) for s in segs) if v is not None)
        left = None
        for (p, q) in slanted:
            if p[0] < x <= q[0]:
                v = p[1] + (x - p[0]) * Fraction(q[1] - p[1], q[0] - p[0])
                if left is None or v > left:
                    left = v
        if pts and left is not None and left < top:
            pts.append((x, left))
        pts.append((x, top))
    # drop points on the segment between their neighbours
    changed = True
    while changed and len(pts) > 2:
        changed = False
        for i in range(1, len(pts) - 1):
            (ox, oy), (px, py), (nx, ny) = pts[i - 1], pts[i], pts[i + 1]
            if (nx - ox) * (py - oy) - (ny - oy) * (px - ox) == 0:
                del pts[i]
                changed = True
                break
    return [(_norm(x), _norm(y)) for x, y in pts]


def _norm(v):
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else v
