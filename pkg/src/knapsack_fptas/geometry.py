"""Monotone point sets: apex/base classification, sparsification and combining.

A monotone point set ``P`` is a chain of points with non-decreasing
coordinates (integers in the solver, exact rationals allowed elsewhere). ``g[P](x)`` is the largest y on the chain at abscissa x, and the
region ``R(P)`` is everything on or below the chain. Two point sets combine
through the Minkowski sum of their regions; that sum is what the max-plus
convolution of the underlying profit functions looks like geometrically.

Everything here uses exact integer arithmetic. Functions accept either a
``MonotonePointSet`` or a plain sequence of ``(x, y)`` tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Sequence, Tuple

from .core import StepFn

Point = Tuple[int, int]

APEX, BASE, DEGENERATE = "apex", "base", "degenerate"
UPPER, LOWER = "upper", "lower"


def _coord(v):
    # the solver only produces integers; exact rationals are kept for reference sets
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    return int(v)


class MonotonePointSet:
    __slots__ = ("points",)

    def __init__(self, points: Iterable[Point], check: bool = True):
        pts = tuple((_coord(x), _coord(y)) for x, y in points)
        if check:
            for i in range(1, len(pts)):
                if pts[i][0] < pts[i - 1][0] or pts[i][1] < pts[i - 1][1]:
                    raise ValueError(f"points not monotone at index {i}: {pts[i - 1]} -> {pts[i]}")
                if i >= 2 and pts[i][0] <= pts[i - 2][0]:
                    raise ValueError(f"three points share x = {pts[i][0]}")
        self.points = pts

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __eq__(self, other):
        if isinstance(other, MonotonePointSet):
            return self.points == other.points
        return NotImplemented

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"MonotonePointSet({list(self.points)})"

    @property
    def min_y(self) -> int:
        return self.points[0][1]

    @property
    def max_y(self) -> int:
        return self.points[-1][1]

    @property
    def min_x(self) -> int:
        return self.points[0][0]

    @property
    def max_x(self) -> int:
        return self.points[-1][0]


@dataclass(frozen=True)
class Classification:
    labels: tuple
    type_seq: tuple
    convex_number: int


@dataclass(frozen=True)
class Block:
    points: tuple
    kind: str

    @property
    def min_y(self) -> int:
        return self.points[0][1]

    @property
    def max_y(self) -> int:
        return self.points[-1][1]


def _pts(P) -> tuple:
    return P.points if isinstance(P, MonotonePointSet) else tuple(P)


def cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def side(prev: Point, p: Point, nxt: Point) -> int:
    """+1 if p lies strictly above the chord prev-nxt, -1 below, 0 on it."""
    c = cross(prev, nxt, p)
    return (c > 0) - (c < 0)


def contour_of(f: StepFn) -> MonotonePointSet:
    """Staircase through the corners of a step function (2k - 1 points)."""
    pts = [(f.xs[0], f.ys[0])]
    for x, y in zip(f.xs[1:], f.ys[1:]):
        pts.append((x, pts[-1][1]))
        pts.append((x, y))
    return MonotonePointSet(pts, check=False)


def classify(P) -> Classification:
    pts = _pts(P)
    k = len(pts)
    labels = []
    for i in range(k):
        if i == 0 or i == k - 1:
            labels.append(APEX)
            continue
        s = side(pts[i - 1], pts[i], pts[i + 1])
        labels.append(APEX if s > 0 else BASE if s < 0 else DEGENERATE)
    seq = tuple(1 if lab == APEX else 0 for lab in labels if lab != DEGENERATE)
    runs = sum(1 for i in range(len(seq)) if i == 0 or seq[i] != seq[i - 1])
    return Classification(tuple(labels), seq, runs)


def reduce(P, delta: int) -> MonotonePointSet:
    """Sparsify ``P`` by merging apex pairs whose y-gap is at most ``delta``.

    Scans left to right keeping a stack of the apexes seen so far. When a new
    apex x sits at most ``delta`` above the stack top y, everything strictly
    between them (necessarily a convex run of bases under the chord y-x) is
    dropped. The region only grows. Points whose status changes as a result
    are re-examined: a degenerate point is removed, an apex that turned into
    a base leaves the stack.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    pts = _pts(P)
    k = len(pts)
    if k <= 2:
        return MonotonePointSet(pts, check=False)
    out = [pts[0]]
    stack = [0]
    for j in range(1, k):
        x = pts[j]
        nxt = pts[j + 1] if j + 1 < k else None
        out.append(x)
        if nxt is not None:
            s = side(out[-2], x, nxt)
            if s == 0:
                out.pop()
                continue
            if s < 0:
                continue
        is_apex = True
        while stack:
            t = stack[-1]
            top = out[t]
            gap = x[1] - top[1]
            if not 0 < gap <= delta:
                break
            del out[t + 1:-1]
            if nxt is not None:
                s = side(out[-2], x, nxt)
                if s <= 0:
                    if s == 0:
                        out.pop()
                    is_apex = False
            if t > 0:
                sy = side(out[t - 1], top, out[t + 1] if t + 1 < len(out) else nxt)
                if sy <= 0:
                    stack.pop()
                    if sy == 0:
                        del out[t]
                    if is_apex:
                        continue
                    break
            break
        if is_apex:
            stack.append(len(out) - 1)
    return MonotonePointSet(out, check=False)


def decompose(P) -> List[Block]:
    """Split ``P`` into maximal upper-hull and lower-hull blocks.

    A block starts at the first point and wherever the apex/base type changes;
    consecutive blocks share their boundary point. Two-point blocks are
    reported as upper hulls.
    """
    pts = _pts(P)
    k = len(pts)
    if k == 1:
        return [Block(pts, UPPER)]
    types = [1] + [1 if side(pts[i - 1], pts[i], pts[i + 1]) > 0 else 0 for i in range(1, k - 1)] + [1]
    starts = [i for i in range(k - 1) if i == 0 or types[i] != types[i - 1]]
    blocks = []
    for b, s in enumerate(starts):
        e = starts[b + 1] if b + 1 < len(starts) else k - 1
        seg = pts[s:e + 1]
        kind = UPPER if len(seg) == 2 or types[s + 1] == 1 else LOWER
        blocks.append(Block(seg, kind))
    return blocks


def minkowski_upper_hulls(A, B) -> MonotonePointSet:
    """Upper hull of the Minkowski sum of two upper-hull chains (edge merge by slope).

    Parallel edges stay separate, so the result keeps one vertex per input edge.
    """
    a = A.points if isinstance(A, (Block, MonotonePointSet)) else tuple(A)
    b = B.points if isinstance(B, (Block, MonotonePointSet)) else tuple(B)
    ea = [(a[i + 1][0] - a[i][0], a[i + 1][1] - a[i][1]) for i in range(len(a) - 1)]
    eb = [(b[i + 1][0] - b[i][0], b[i + 1][1] - b[i][1]) for i in range(len(b) - 1)]
    cur = (a[0][0] + b[0][0], a[0][1] + b[0][1])
    out = [cur]
    i = j = 0
    while i < len(ea) or j < len(eb):
        if j == len(eb):
            e = ea[i]
            i += 1
        elif i == len(ea):
            e = eb[j]
            j += 1
        else:
            # steeper edge first; on parallel edges the left operand goes first
            if ea[i][0] * eb[j][1] - ea[i][1] * eb[j][0] > 0:
                e = eb[j]
                j += 1
            else:
                e = ea[i]
                i += 1
        cur = (cur[0] + e[0], cur[1] + e[1])
        out.append(cur)
    return MonotonePointSet(out, check=False)


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def frontier_ceil(points: Sequence[Point]) -> list:
    """For each integer level y from min_y to max_y, ceil of the least x on the chain at height >= y."""
    out = [points[0][0]]
    for (ax, ay), (bx, by) in zip(points, points[1:]):
        dy = by - ay
        if dy == 0:
            continue
        dx = bx - ax
        for t in range(1, dy + 1):
            out.append(ax + _ceil_div(t * dx, dy))
    return out


def frontier_scaled(points: Sequence[Point]) -> Tuple[int, list]:
    """Exact least-x frontier scaled by D (lcm of segment heights): returns (D, values)."""
    D = 1
    for (ax, ay), (bx, by) in zip(points, points[1:]):
        dy = by - ay
        if dy:
            D = D * dy // gcd(D, dy)
    out = [points[0][0] * D]
    for (ax, ay), (bx, by) in zip(points, points[1:]):
        dy = by - ay
        if dy == 0:
            continue
        step = (bx - ax) * (D // dy)
        base = ax * D
        for t in range(1, dy + 1):
            out.append(base + t * step)
    return D, out


def _check_concave(phi: Sequence[int]) -> None:
    for i in range(2, len(phi)):
        if phi[i] - phi[i - 1] > phi[i - 1] - phi[i - 2]:
            raise ValueError("phi must have non-increasing successive differences")


def convolve_lower_block(phi: Sequence[int], gamma: Sequence[int], check: bool = True) -> list:
    """eta[y] = min over split y = i + j of phi[i] + gamma[j], phi with shrinking steps.

    Candidates j are kept on a stack whose takeover times are found by binary
    search. Splits are enumerated block by block (block length len(phi) - 1):
    pairs inside one block in increasing order of y, and pairs reaching back
    into the previous block in decreasing order of y.
    """
    if check:
        _check_concave(phi)
    X, Y = len(phi), len(gamma)
    if X == 0 or Y == 0:
        return []
    if X == 1:
        return [phi[0] + g for g in gamma]
    L = X + Y - 1
    eta = [None] * L
    S = X - 1
    for start in range(0, L, S):
        n = min(S, L - start)
        cs = [start + q if start + q < Y else None for q in range(n)]
        ys = [start + q for q in range(n)]
        _stack_pass(cs, ys, phi, gamma, eta)
        if start > 0:
            cs = [start - 1 - q for q in range(S)]
            cs = [c if c < Y else None for c in cs]
            ys = [start + S - 1 - q for q in range(S)]
            _stack_pass(cs, ys, phi, gamma, eta)
    return eta


def _stack_pass(cs, ys, phi, gamma, eta) -> None:
    n = len(cs)
    L = len(eta)

    def beat_time(old, new, q0):
        lo, hi = q0, n
        while lo < hi:
            mid = (lo + hi) >> 1
            y = ys[mid]
            if phi[y - old] + gamma[old] <= phi[y - new] + gamma[new]:
                hi = mid
            else:
                lo = mid + 1
        return lo

    st_c: list = []
    st_t: list = []
    for q in range(n):
        c = cs[q]
        if c is not None:
            t = n
            while st_c:
                t = beat_time(st_c[-1], c, q)
                if t >= n or (len(st_c) >= 2 and t >= st_t[-1]):
                    st_c.pop()
                    st_t.pop()
                    t = n
                    continue
                break
            st_c.append(c)
            st_t.append(t)
        while len(st_c) >= 2 and q >= st_t[-1]:
            st_c.pop()
            st_t.pop()
        y = ys[q]
        if st_c and y < L:
            best = st_c[-1]
            v = phi[y - best] + gamma[best]
            if eta[y] is None or v < eta[y]:
                eta[y] = v


def _block_profile(block: Block):
    pts = block.points
    ceil_vals = frontier_ceil(pts)
    if block.kind == LOWER:
        D, scaled = frontier_scaled(pts)
    else:
        D, scaled = 1, None
    return pts[0][1], ceil_vals, D, scaled


def block_sum(Ba: Block, Bb: Block) -> Tuple[int, list]:
    """Least x (rounded up) at each integer level of the block-pair region sum.

    Returns ``(first_level, values)``. Upper pairs go through the Minkowski
    sum of the hulls; any pair with a lower hull goes through
    ``convolve_lower_block`` on exact (scaled) frontiers.
    """
    return _block_sum(Ba, _block_profile(Ba), Bb, _block_profile(Bb))


def _block_sum(Ba, pa, Bb, pb):
    lo = Ba.min_y + Bb.min_y
    if Ba.kind == UPPER and Bb.kind == UPPER:
        return lo, frontier_ceil(minkowski_upper_hulls(Ba, Bb).points)
    if Ba.kind != LOWER:
        pa, pb = pb, pa
    _, _, D, phi = pa
    gamma = [v * D for v in pb[1]]
    eta = convolve_lower_block(phi, gamma, check=False)
    return lo, [_ceil_div(v, D) for v in eta]


def combine_levels(Pa, Pb, sigma: int) -> Tuple[int, list]:
    """Per-level least x of R(Pa) + R(Pb) at every multiple of sigma.

    Returns ``(first_level, xs)`` with levels counted in units of sigma.
    Both inputs must have y-coordinates that are multiples of sigma.
    """
    a, b = _pts(Pa), _pts(Pb)
    for x, y in a + b:
        if y % sigma:
            raise ValueError(f"y-coordinate {y} is not a multiple of sigma={sigma}")
    a = tuple((x, y // sigma) for x, y in a)
    b = tuple((x, y // sigma) for x, y in b)
    ba, bb = decompose(a), decompose(b)
    prof_a = [_block_profile(B) for B in ba]
    prof_b = [_block_profile(B) for B in bb]
    lo = a[0][1] + b[0][1]
    best = [None] * (a[-1][1] + b[-1][1] - lo + 1)
    for A, pa in zip(ba, prof_a):
        for B, pb in zip(bb, prof_b):
            start, vals = _block_sum(A, pa, B, pb)
            off = start - lo
            for i, v in enumerate(vals):
                cur = best[off + i]
                if cur is None or v < cur:
                    best[off + i] = v
    return lo, best


def levels_to_points(lo: int, xs: Sequence[int], sigma: int) -> list:
    """Staircase corners of the step function described by per-level least x."""
    pts: list = []
    for i, x in enumerate(xs):
        y = (lo + i) * sigma
        if pts and pts[-1][0] == x:
            pts[-1] = (x, y)
        else:
            if pts:
                pts.append((x, pts[-1][1]))
            pts.append((x, y))
    return pts


def levels_to_stepfn(lo: int, xs: Sequence[int], sigma: int, grain=Fraction(1), x_hi=None) -> StepFn:
    bxs: list = []
    bys: list = []
    for i, x in enumerate(xs):
        y = (lo + i) * sigma
        if bxs and bxs[-1] == x:
            bys[-1] = y
        else:
            bxs.append(x)
            bys.append(y)
    return StepFn(tuple(bxs), tuple(bys), grain, x_hi)


def combine(Pa, Pb, sigma: int) -> MonotonePointSet:
    """A staircase point set that sigma-accurately represents R(Pa) + R(Pb)."""
    lo, xs = combine_levels(Pa, Pb, sigma)
    return MonotonePointSet(levels_to_points(lo, xs, sigma), check=False)


def g_sample(P, sigma: int, grain=Fraction(1), x_hi="auto") -> StepFn:
    """Step function of g[P] rounded down to multiples of sigma."""
    pts = _pts(P)
    lo = -((-pts[0][1]) // sigma)
    hi = pts[-1][1] // sigma
    if hi < lo:
        raise ValueError("P spans no multiple of sigma")
    scaled = frontier_ceil_levels(pts, lo * sigma, hi * sigma, sigma)
    if x_hi == "auto":
        x_hi = pts[-1][0]
    return levels_to_stepfn(lo, scaled, sigma, grain, x_hi)


def frontier_ceil_levels(pts: Sequence[Point], y_from: int, y_to: int, step: int) -> list:
    """Least x (ceil) on the chain at height >= y for y = y_from, y_from+step, ..., y_to."""
    out = []
    seg = 0
    for y in range(y_from, y_to + 1, step):
        if y <= pts[0][1]:
            out.append(pts[0][0])
            continue
        while pts[seg + 1][1] < y:
            seg += 1
        (ax, ay), (bx, by) = pts[seg], pts[seg + 1]
        out.append(ax + _ceil_div((y - ay) * (bx - ax), by - ay))
    return out


def g_value(P, x) -> Fraction:
    """Exact g[P](x): the highest chain point at abscissa x (None left of the chain)."""
    pts = _pts(P)
    if x < pts[0][0] or x > pts[-1][0]:
        return None
    best = None
    for (ax, ay), (bx, by) in zip(pts, pts[1:]):
        if ax <= x <= bx:
            if ax == bx:
                v = Fraction(by)
            else:
                v = ay + Fraction((x - ax) * (by - ay), bx - ax)
            if best is None or v > best:
                best = v
    if best is None:
        best = Fraction(pts[0][1])
    return best


def convex_number(P) -> int:
    return classify(P).convex_number
