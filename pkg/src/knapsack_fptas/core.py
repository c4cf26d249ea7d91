"""Instances, monotone step functions and the rounding/checking primitives."""

from __future__ import annotations

import bisect
from math import gcd
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

NEG_INF = float("-inf")
"""Sentinel for "no feasible value" (left of a function's domain). Never used in arithmetic."""

COORD_LIMIT = 1 << 62


@dataclass(frozen=True)
class Item:
    profit: int
    weight: int

    def __post_init__(self):
        if self.profit <= 0:
            raise ValueError(f"profit must be positive, got {self.profit}")
        if self.weight < 0:
            raise ValueError(f"weight must be non-negative, got {self.weight}")


@dataclass(frozen=True)
class Instance:
    items: tuple
    capacity: int

    def __init__(self, items: Iterable, capacity: int):
        its = tuple(it if isinstance(it, Item) else Item(int(it[0]), int(it[1])) for it in items)
        if capacity < 0:
            raise ValueError("capacity must be non-negative")
        object.__setattr__(self, "items", its)
        object.__setattr__(self, "capacity", int(capacity))

    @property
    def n(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class StepFn:
    """Monotone step function ``f(x) = ys[i]`` for ``xs[i] <= x < xs[i+1]``.

    Values are integer counts of ``grain``. Breakpoints are canonical: x and y
    both strictly increase, so the number of breakpoints is the complexity.
    ``x_hi=None`` means the last value extends to +inf; otherwise the function
    is undefined (``NEG_INF``) right of ``x_hi``.
    """

    xs: tuple
    ys: tuple
    grain: Fraction = Fraction(1)
    x_hi: Optional[int] = None

    def __post_init__(self):
        xs, ys = self.xs, self.ys
        if len(xs) != len(ys) or not xs:
            raise ValueError("a step function needs at least one breakpoint")
        for i in range(1, len(xs)):
            if xs[i] <= xs[i - 1] or ys[i] <= ys[i - 1]:
                raise ValueError("breakpoints must be strictly increasing in x and y")
        if self.x_hi is not None and self.x_hi < xs[-1]:
            raise ValueError("x_hi lies left of the last breakpoint")
        if not isinstance(self.grain, Fraction):
            object.__setattr__(self, "grain", Fraction(self.grain))
        if self.grain <= 0:
            raise ValueError("grain must be positive")

    @classmethod
    def from_points(cls, points: Iterable, grain=Fraction(1), x_hi: Optional[int] = None) -> "StepFn":
        """Build from (x, y) pairs sorted by x with non-decreasing y; merges flat steps."""
        xs: list = []
        ys: list = []
        for x, y in points:
            if xs and x <= xs[-1]:
                raise ValueError("x must be strictly increasing")
            if ys and y < ys[-1]:
                raise ValueError("y must be non-decreasing")
            if ys and y == ys[-1]:
                continue
            xs.append(x)
            ys.append(y)
        return cls(tuple(xs), tuple(ys), Fraction(grain), x_hi)

    @classmethod
    def constant(cls, value: int = 0, grain=Fraction(1), x_lo: int = 0, x_hi: Optional[int] = None) -> "StepFn":
        return cls((x_lo,), (value,), Fraction(grain), x_hi)

    @property
    def x_lo(self) -> int:
        return self.xs[0]

    @property
    def right_extended(self) -> bool:
        return self.x_hi is None

    @property
    def complexity(self) -> int:
        return len(self.xs)

    @property
    def max_value(self) -> int:
        return self.ys[-1]

    def points(self) -> list:
        return list(zip(self.xs, self.ys))

    def value(self, x: int) -> Fraction:
        """Value at ``x`` in absolute units (Fraction), or NEG_INF."""
        v = eval_step(self, x)
        return v if v == NEG_INF else v * self.grain

    def with_grain(self, grain) -> "StepFn":
        """Re-express on a finer grain that divides the current one."""
        grain = Fraction(grain)
        ratio = self.grain / grain
        if ratio.denominator != 1:
            raise ValueError(f"grain {grain} does not divide {self.grain}")
        r = ratio.numerator
        return StepFn(self.xs, tuple(y * r for y in self.ys), grain, self.x_hi)

    def capped(self, cap: int) -> "StepFn":
        """min(f, cap) with cap in grains."""
        if self.ys[-1] <= cap:
            return self
        k = bisect.bisect_left(self.ys, cap)
        xs = list(self.xs[:k])
        ys = list(self.ys[:k])
        if k == 0 or ys[-1] < cap:
            xs.append(self.xs[k])
            ys.append(cap)
        return StepFn(tuple(xs), tuple(ys), self.grain, self.x_hi)

    def truncated(self, x_max: int) -> "StepFn":
        """Restrict the domain to x <= x_max (keeps at least the first breakpoint)."""
        k = bisect.bisect_right(self.xs, x_max)
        if k == 0:
            raise ValueError("x_max lies left of the domain")
        hi = x_max if self.x_hi is None else min(self.x_hi, x_max)
        return StepFn(self.xs[:k], self.ys[:k], self.grain, hi)


def eval_step(f: StepFn, x: int):
    """Value of ``f`` at ``x`` in grains; NEG_INF outside the domain."""
    if x < f.xs[0]:
        return NEG_INF
    if f.x_hi is not None and x > f.x_hi:
        return NEG_INF
    return f.ys[bisect.bisect_right(f.xs, x) - 1]


# The public name mirrors the usual mathematical notation.
eval = eval_step  # noqa: A001


def _check_eps(eps) -> Fraction:
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    return eps


@lru_cache(maxsize=4096)
def _grid(eps: Fraction, top: int) -> tuple:
    """Integer geometric grid 1 = g0 < g1 < ... covering ``top``.

    g_{k+1} = max(g_k + 1, floor(g_k / (1 - eps))), so consecutive levels
    satisfy g_{k+1} <= g_k / (1 - eps) and every value y >= 1 has a level in
    ((1 - eps) y, y].
    """
    num, den = eps.denominator - eps.numerator, eps.denominator  # 1 - eps = num/den
    g = [1]
    while g[-1] < top:
        cur = g[-1]
        g.append(max(cur + 1, cur * den // num))
    return tuple(g)


def _grid_upto(eps: Fraction, top: int) -> tuple:
    # round the cache key up to a power of two so repeated calls share grids
    t = 1
    while t < top:
        t <<= 1
    return _grid(eps, t)


def round_down_geometric(f: StepFn, eps) -> StepFn:
    """Snap positive values down onto a geometric grid of ratio 1/(1-eps).

    The grid is anchored at one grain, so the result stays integral and
    satisfies ``(1-eps) f <= result <= f``.
    """
    eps = _check_eps(eps)
    if f.ys[-1] <= 0:
        return f
    grid = _grid_upto(eps, f.ys[-1])
    pts = []
    for x, y in zip(f.xs, f.ys):
        if y > 0:
            y = grid[bisect.bisect_right(grid, y) - 1]
        if pts and pts[-1][1] == y:
            continue
        pts.append((x, y))
    return StepFn(tuple(p[0] for p in pts), tuple(p[1] for p in pts), f.grain, f.x_hi)


def round_up_grid(f: StepFn, sigma) -> StepFn:
    """Round every value up to a multiple of ``sigma`` (absolute units)."""
    ratio = Fraction(sigma) / f.grain
    if ratio <= 0 or ratio.denominator != 1:
        raise ValueError(f"sigma {sigma} is not a positive multiple of the grain {f.grain}")
    s = ratio.numerator
    pts = []
    for x, y in zip(f.xs, f.ys):
        y = -((-y) // s) * s
        if pts and pts[-1][1] == y:
            continue
        pts.append((x, y))
    return StepFn(tuple(p[0] for p in pts), tuple(p[1] for p in pts), f.grain, f.x_hi)


def common_grain(fs: Sequence[StepFn]) -> Fraction:
    g = fs[0].grain
    for f in fs[1:]:
        # gcd of two rationals a/b, c/d is gcd(a, c) / lcm(b, d)
        num = gcd(g.numerator, f.grain.numerator)
        den = g.denominator * f.grain.denominator // gcd(g.denominator, f.grain.denominator)
        g = Fraction(num, den)
    return g


def pointwise_max(fs: Sequence[StepFn]) -> StepFn:
    """Upper envelope of step functions sharing a grain."""
    fs = list(fs)
    if not fs:
        return StepFn.constant(0)
    grain = fs[0].grain
    if any(f.grain != grain for f in fs):
        raise ValueError("pointwise_max needs a common grain")
    if len(fs) == 1:
        return fs[0]
    if any(f.x_hi is None for f in fs):
        x_hi = None
    else:
        x_hi = max(f.x_hi for f in fs)
    xs = sorted(set(x for f in fs for x in f.xs))
    pts = []
    for x in xs:
        best = max(eval_step(f, x) for f in fs)
        if best == NEG_INF:
            continue
        if pts and best <= pts[-1][1]:
            continue
        pts.append((x, best))
    # functions ending before x_hi leave gaps; they read as the envelope of the rest
    return StepFn(tuple(p[0] for p in pts), tuple(p[1] for p in pts), grain, x_hi)


def verify_approx(approx: StepFn, exact: StepFn, delta, additive, t=None) -> bool:
    """Check that ``approx`` is a (1-delta, additive) approximation of ``exact`` up to ``t``.

    ``additive`` and ``t`` are in grains of ``exact``; ``t=None`` means no cap.
    Both functions are compared exactly at the union of their breakpoints.
    """
    if approx.x_lo != exact.x_lo or approx.x_hi != exact.x_hi:
        raise ValueError("verify_approx needs functions over the same domain")
    return first_violation(approx, exact, delta, additive, t) is None


def first_violation(approx: StepFn, exact: StepFn, delta, additive, t=None):
    """Return the first x where the approximation contract fails, else None."""
    delta = Fraction(delta)
    additive = Fraction(additive)
    ga, ge = approx.grain, exact.grain
    for x in sorted(set(approx.xs) | set(exact.xs)):
        a = eval_step(approx, x)
        e = eval_step(exact, x)
        if e == NEG_INF:
            if a != NEG_INF:
                return x
            continue
        if a == NEG_INF:
            return x
        av, ev = a * ga, e * ge
        if av > ev:
            return x
        if t is not None and ev > t * ge:
            continue
        if av < (1 - delta) * ev - additive * ge:
            return x
    return None


@dataclass
class ApproxReport:
    sol: Fraction
    eps: Fraction
    n: int
    capacity: int
    elapsed: float = 0.0
    reference: Optional[Fraction] = None
    budget_ledger: list = field(default_factory=list)

    @property
    def lower_ok(self) -> Optional[bool]:
        if self.reference is None:
            return None
        return (1 - self.eps) * self.reference <= self.sol <= self.reference

    def to_dict(self) -> dict:
        return {
            "sol": str(self.sol),
            "eps": str(self.eps),
            "n": self.n,
            "capacity": self.capacity,
            "reference": None if self.reference is None else str(self.reference),
            "lower_ok": self.lower_ok,
            "budget": [[name, str(mult), str(add)] for name, mult, add in self.budget_ledger],
        }
