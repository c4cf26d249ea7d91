import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from knapsack_fptas.core import StepFn, eval_step
from knapsack_fptas.geometry import (
    APEX,
    BASE,
    DEGENERATE,
    LOWER,
    UPPER,
    Block,
    MonotonePointSet,
    block_sum,
    classify,
    combine,
    combine_levels,
    contour_of,
    convex_number,
    convolve_lower_block,
    decompose,
    frontier_ceil,
    g_sample,
    g_value,
    minkowski_upper_hulls,
    reduce,
)
from knapsack_fptas.oracles import raster_levels
from knapsack_fptas.suites import brute_minplus, lower_block_case, random_chain, region_contains

from strategies import stepfns

A, B, C, D, E, F, G = (0, 0), (2, 2), (3, 8), (5, 9), (6, 11), (7, 14), (11, 20)
SEVEN = [A, B, C, D, E, F, G]


def test_contour_examples():
    assert contour_of(StepFn((0,), (0,))).points == ((0, 0),)
    assert contour_of(StepFn((0, 2), (0, 5))).points == ((0, 0), (2, 0), (2, 5))


@given(stepfns(bounded=False))
def test_contour_dominates_function(f):
    P = contour_of(f)
    for x in range(f.xs[0], f.xs[-1] + 1):
        assert g_value(P, x) >= eval_step(f, x)
    for x, y in f.points():
        assert g_value(P, x) == y


def test_point_set_rejects_decreasing_chain():
    with pytest.raises(ValueError):
        MonotonePointSet([(0, 1), (1, 0)])


def test_classify_seven_point_shape():
    cl = classify(SEVEN)
    assert cl.type_seq == (1, 0, 1, 0, 0, 1, 1)
    assert cl.convex_number == 5 == convex_number(SEVEN)


def test_classify_small_cases():
    cl = classify([(0, 0), (1, 1)])
    assert cl.labels == (APEX, APEX) and cl.convex_number == 1
    assert classify([(0, 0), (1, 1), (2, 2)]).labels[1] == DEGENERATE
    assert classify([(0, 0), (1, 0), (1, 1)]).labels[1] == BASE


def test_reduce_seven_point_shape():
    assert reduce(SEVEN, 6).points == (A, B, C, G)


def test_reduce_small_delta_keeps_points():
    assert reduce(SEVEN, 1).points == tuple(SEVEN)


@pytest.mark.parametrize("seed", range(150))
def test_reduce_grows_region_and_bounds_convex_number(seed):
    r = random.Random(seed)
    P = random_chain(r, 30)
    delta = r.randint(1, 10)
    P2 = reduce(P, delta).points
    assert P2[0] == tuple(P[0]) and P2[-1] == tuple(P[-1])
    assert region_contains(P2, P)
    dy = P[-1][1] - P[0][1]
    assert convex_number(P2) <= 2 * -(-dy // delta) + 3


def test_decompose_seven_point_shape():
    blocks = decompose(SEVEN)
    assert [b.points for b in blocks] == [(A, B), (B, C), (C, D), (D, E, F), (F, G)]
    assert blocks[3].kind == LOWER


def upper_chain(r, k):
    slopes = set()
    edges = []
    while len(edges) < k - 1:
        e = (r.randint(1, 9), r.randint(1, 9))
        s = Fraction(e[1], e[0])
        if s not in slopes:
            slopes.add(s)
            edges.append(e)
    edges.sort(key=lambda e: Fraction(e[1], e[0]), reverse=True)
    pts = [(r.randint(0, 5), r.randint(0, 5))]
    for dx, dy in edges:
        pts.append((pts[-1][0] + dx, pts[-1][1] + dy))
    return pts


def test_decompose_upper_hull_single_block():
    pts = upper_chain(random.Random(3), 6)
    assert [b.points for b in decompose(pts)] == [tuple(pts)]


@pytest.mark.parametrize("seed", range(100))
def test_decompose_concatenates_back(seed):
    P = random_chain(random.Random(seed), 30)
    blocks = decompose(P)
    joined = list(blocks[0].points)
    for b in blocks[1:]:
        assert b.points[0] == joined[-1]
        joined.extend(b.points[1:])
    assert joined == [tuple(p) for p in P]
    for b in blocks:
        sides = classify(b.points).labels[1:-1]
        # collinear points are kept inside lower blocks
        want = {APEX} if b.kind == UPPER else {BASE, DEGENERATE}
        assert set(sides) <= want


def hull_of_sums(a, b):
    pts = sorted({(p[0] + q[0], p[1] + q[1]) for p in a for q in b})
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (ox, oy), (ax, ay) = hull[-2], hull[-1]
            if (ax - ox) * (p[1] - oy) - (ay - oy) * (p[0] - ox) >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def drop_collinear(pts):
    out = []
    for p in pts:
        while len(out) >= 2:
            (ox, oy), (ax, ay) = out[-2], out[-1]
            if (ax - ox) * (p[1] - oy) == (ay - oy) * (p[0] - ox):
                out.pop()
            else:
                break
        out.append(p)
    return out


def test_minkowski_upper_examples():
    hull = [(0, 0), (1, 2), (3, 3)]
    assert minkowski_upper_hulls(hull, hull).points == ((0, 0), (1, 2), (2, 4), (4, 5), (6, 6))
    assert minkowski_upper_hulls(hull, [(2, 1)]).points == ((2, 1), (3, 3), (5, 4))


@pytest.mark.parametrize("seed", range(100))
def test_minkowski_upper_random(seed):
    r = random.Random(seed)
    a, b = upper_chain(r, r.randint(1, 20)), upper_chain(r, r.randint(1, 20))
    assert drop_collinear(list(minkowski_upper_hulls(a, b).points)) == hull_of_sums(a, b)


def test_convolve_lower_block_examples():
    assert convolve_lower_block([0, 3, 5, 6], [0, 4, 5]) == [0, 3, 5, 6, 10, 11]
    assert convolve_lower_block([1, 4, 6], [0]) == [1, 4, 6]


def test_convolve_lower_block_rejects_bad_phi():
    with pytest.raises(ValueError):
        convolve_lower_block([0, 1, 3], [0])


@pytest.mark.parametrize("seed", range(200))
def test_convolve_lower_block_random(seed):
    phi, gamma = lower_block_case(random.Random(seed), 64)
    assert convolve_lower_block(phi, gamma) == brute_minplus(phi, gamma)


def test_block_sum_single_points():
    assert block_sum(Block(((1, 2),), UPPER), Block(((3, 4),), UPPER)) == (6, [4])


@pytest.mark.parametrize("seed", range(150))
def test_block_sum_matches_raster(seed):
    r = random.Random(seed)
    ba = r.choice(decompose(random_chain(r, 12)))
    bb = r.choice(decompose(random_chain(r, 12)))
    assert block_sum(ba, bb) == raster_levels(ba.points, bb.points, 1)
    if ba.kind == UPPER and bb.kind == UPPER:
        assert block_sum(ba, bb)[1] == frontier_ceil(minkowski_upper_hulls(ba, bb).points)


def test_combine_with_single_point_translates():
    P = [(0, 0), (2, 4), (3, 4), (5, 8)]
    Q = combine(P, [(1, 2)], 2)
    for x in range(1, 7):
        assert g_value(Q, x) // 2 * 2 == g_value([(x0 + 1, y0 + 2) for x0, y0 in P], x) // 2 * 2


def test_combine_three_point_sets():
    a = [(0, 0), (1, 2), (4, 3)]
    b = [(0, 0), (2, 0), (2, 3)]
    assert combine_levels(a, b, 1) == raster_levels(a, b, 1)


def test_combine_rejects_off_grid():
    with pytest.raises(ValueError):
        combine([(0, 0), (1, 3)], [(0, 0)], 2)


@pytest.mark.parametrize("seed", range(90))
def test_combine_matches_raster(seed):
    r = random.Random(seed)
    sigma = (1, 2, 4)[seed % 3]
    a, b = random_chain(r, 30, sigma), random_chain(r, 30, sigma)
    assert combine_levels(a, b, sigma) == raster_levels(a, b, sigma)


def test_g_sample_examples():
    f = StepFn((0, 3, 5), (0, 2, 6), Fraction(1), 5)
    assert g_sample(contour_of(f), 1) == f
    assert g_sample([(0, 0), (4, 2)], 1).points() == [(0, 0), (2, 1), (4, 2)]


@pytest.mark.parametrize("seed", range(60))
def test_g_sample_below_g_within_sigma(seed):
    r = random.Random(seed)
    P = random_chain(r, 15)
    sigma = r.choice((1, 2, 3))
    if P[-1][1] // sigma * sigma < P[0][1]:
        return
    s = g_sample(P, sigma)
    for x in range(P[0][0], P[-1][0] + 1):
        g = g_value(P, x)
        v = eval_step(s, x)
        assert v <= g < v + sigma or v < P[0][1]
