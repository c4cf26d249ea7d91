"""(max,+)-convolution of step functions: exact, concave (SMAWK) and approximate merging."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import _purekernels, kernels
from .core import NEG_INF, StepFn, eval_step, round_down_geometric


# sums at or above this go through arbitrary-precision code
WIDE = 1 << 62


def _same_grain(f: StepFn, g: StepFn) -> None:
    if f.grain != g.grain:
        raise ValueError(f"grains differ: {f.grain} vs {g.grain}")


def maxplus_naive(f: StepFn, g: StepFn) -> StepFn:
    """Exact (f ⊕ g)(x) = max over x_f + x_g = x of f(x_f) + g(x_g)."""
    _same_grain(f, g)
    args = (list(f.xs), list(f.ys), list(g.xs), list(g.ys))
    if max(f.xs[-1] + g.xs[-1], f.ys[-1] + g.ys[-1]) < WIDE:
        xs, ys = kernels.maxplus_steps(*args)
    else:
        xs, ys = _purekernels.maxplus_steps(*args)
    x_hi = None if f.x_hi is None or g.x_hi is None else f.x_hi + g.x_hi
    return StepFn(tuple(int(x) for x in xs), tuple(int(y) for y in ys), f.grain, x_hi)


def _is_concave(a: Sequence) -> bool:
    return all(a[i + 1] - a[i] <= a[i] - a[i - 1] for i in range(1, len(a) - 1))


def _smawk_rows(rows: list, cols: list, value) -> dict:
    """Column of the row maximum for a totally monotone matrix (ties to the smaller column)."""
    if not rows:
        return {}
    # REDUCE: keep at most len(rows) candidate columns
    stack: list = []
    for c in cols:
        while stack:
            r = rows[len(stack) - 1]
            if value(r, stack[-1]) >= value(r, c):
                break
            stack.pop()
        if len(stack) < len(rows):
            stack.append(c)
    cols = stack
    best = _smawk_rows(rows[1::2], cols, value)
    # INTERPOLATE the even rows between the known odd-row answers
    k = 0
    for i in range(0, len(rows), 2):
        r = rows[i]
        stop = best[rows[i + 1]] if i + 1 < len(rows) else cols[-1]
        arg = cols[k]
        top = value(r, arg)
        while cols[k] != stop:
            k += 1
            v = value(r, cols[k])
            if v > top:
                top, arg = v, cols[k]
        best[r] = arg
    return best


def smawk_concave_maxplus(a: Sequence, b: Sequence, check: bool = True) -> list:
    """c[k] = max over i + j = k of a[i] + b[j] for concave ``a`` and arbitrary ``b``.

    ``b`` may contain NEG_INF entries; output positions no split reaches are NEG_INF.
    """
    a = list(a)
    b = list(b)
    if not a or not b:
        raise ValueError("empty sequence")
    if any(v == NEG_INF for v in a):
        raise ValueError("a must be finite")
    if check and not _is_concave(a):
        raise ValueError("a is not concave")
    n_out = len(a) + len(b) - 1
    cols = [j for j, v in enumerate(b) if v != NEG_INF]
    if not cols:
        return [NEG_INF] * n_out
    na = len(a)
    # extend a concavely with steep slopes so out-of-band entries never win a row
    big = 2 * (max(abs(v) for v in a) + max(abs(b[j]) for j in cols)) + 1

    def value(k, j):
        i = k - j
        if i < 0:
            return a[0] + big * i + b[j]
        if i >= na:
            return a[-1] - big * (i - na + 1) + b[j]
        return a[i] + b[j]

    arg = _smawk_rows(list(range(n_out)), cols, value)
    out = []
    for k in range(n_out):
        j = arg[k]
        out.append(a[k - j] + b[j] if 0 <= k - j < na else NEG_INF)
    return out


def merge_dc(fs: Sequence[StepFn], eps, cap: Optional[int] = None) -> StepFn:
    """Approximate f1 ⊕ ... ⊕ fm with a balanced merge tree and geometric rounding.

    Each tree level rounds down by eps/levels, so the result is a
    (1 - eps)-approximation from below. ``cap`` (grains) clips every
    intermediate result, which yields min(⊕ fs, cap).
    """
    eps = Fraction(eps)
    fs = list(fs)
    if not fs:
        return StepFn.constant(0)
    if len(fs) == 1:
        f = round_down_geometric(fs[0], eps)
        return f if cap is None else f.capped(cap)
    levels = (len(fs) - 1).bit_length()
    step = eps / levels
    cur = [f if cap is None else f.capped(cap) for f in fs]
    while len(cur) > 1:
        nxt = []
        for i in range(0, len(cur) - 1, 2):
            h = maxplus_naive(cur[i], cur[i + 1])
            if cap is not None:
                h = h.capped(cap)
            nxt.append(round_down_geometric(h, step))
        if len(cur) % 2:
            nxt.append(cur[-1])
        cur = nxt
    return cur[0]


@dataclass(frozen=True)
class UniformFn:
    """Profit function of items sharing one profit: k cheapest items give k * profit."""

    profit: int
    weights: tuple
    cap: int

    def __post_init__(self):
        if self.profit <= 0:
            raise ValueError("profit must be positive")
        if any(self.weights[i] > self.weights[i + 1] for i in range(len(self.weights) - 1)):
            raise ValueError("weights must be sorted")

    def prefix_weights(self) -> list:
        out = [0]
        for w in self.weights:
            out.append(out[-1] + w)
        return out

    def to_stepfn(self, grain=Fraction(1)) -> StepFn:
        pts: list = []
        for k, x in enumerate(self.prefix_weights()):
            y = k * self.profit
            if pts and pts[-1][0] == x:
                pts[-1] = (x, y)
            else:
                pts.append((x, y))
        return StepFn(tuple(p[0] for p in pts), tuple(p[1] for p in pts), Fraction(grain), None)


def build_class_function(weights: Sequence[int], p: int, cap: int) -> UniformFn:
    """Class function of equal-profit items, kept up to the first value reaching ``cap``."""
    ws = sorted(weights)
    keep = min(len(ws), -(-cap // p)) if cap > 0 else 0
    return UniformFn(p, tuple(ws[:keep]), cap)


def _merge_same_profit(classes: Sequence[UniformFn], cap: int) -> UniformFn:
    # weight-prefix sequences are convex, so their (min,+) convolution is a
    # concave (max,+) convolution after negation
    acc = [-w for w in classes[0].prefix_weights()]
    for c in classes[1:]:
        acc = smawk_concave_maxplus(acc, [-w for w in c.prefix_weights()])
    pw = [-v for v in acc]
    merged = tuple(pw[k + 1] - pw[k] for k in range(len(pw) - 1))
    p = classes[0].profit
    return build_class_function(merged, p, cap)


def merge_profit_classes(classes: Sequence[UniformFn], B: int, eps, grain=Fraction(1)) -> StepFn:
    """(1 - eps)-approximation of min(⊕ classes, B), values in grains of ``grain``."""
    eps = Fraction(eps)
    classes = list(classes)
    if not classes:
        return StepFn.constant(0, grain)
    by_profit: dict = {}
    for c in classes:
        by_profit.setdefault(c.profit, []).append(c)
    fs = []
    for p in sorted(by_profit):
        group = by_profit[p]
        u = group[0] if len(group) == 1 else _merge_same_profit(group, B)
        fs.append(u.to_stepfn(grain).capped(B))
    if len(fs) == 1:
        return fs[0]
    return merge_dc(fs, eps, cap=B)


def maxplus_at(f: StepFn, g: StepFn, x: int):
    """(f ⊕ g)(x) in grains, without building the whole convolution."""
    _same_grain(f, g)
    # an optimal split can always be moved onto a breakpoint of one side or
    # onto the right end of either domain
    cands = set(f.xs)
    cands.update(x - xg for xg in g.xs)
    if g.x_hi is not None:
        cands.add(x - g.x_hi)
    if f.x_hi is not None:
        cands.add(f.x_hi)
    best = NEG_INF
    for xf in cands:
        a = eval_step(f, xf)
        b = eval_step(g, x - xf)
        if a == NEG_INF or b == NEG_INF:
            continue
        if best == NEG_INF or a + b > best:
            best = a + b
    return best
