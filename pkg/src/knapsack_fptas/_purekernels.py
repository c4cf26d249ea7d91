"""Pure-Python versions of the hot kernels (used when the extension is absent)."""

from __future__ import annotations

from .geometry import combine_levels, contour_of, convolve_lower_block, reduce
from .core import StepFn

BACKEND = "python"


def lower_block_conv(phi, gamma):
    return convolve_lower_block(list(phi), list(gamma), check=False)


def maxplus_steps(ax, ay, bx, by):
    """Canonical breakpoints of the max-plus convolution of two step functions."""
    cand = sorted((x1 + x2, y1 + y2) for x1, y1 in zip(ax, ay) for x2, y2 in zip(bx, by))
    xs: list = []
    ys: list = []
    for x, y in cand:
        if ys and y <= ys[-1]:
            continue
        if xs and xs[-1] == x:
            ys[-1] = y
        else:
            xs.append(x)
            ys.append(y)
    return xs, ys


def level_merge(ax, ay, bx, by, sigma, delta):
    """Reduce both staircases, combine them sigma-accurately, round values up to 2*sigma.

    Inputs and output are canonical step-function breakpoints whose values are
    multiples of sigma (input) and 2*sigma (output).
    """
    pa = reduce(contour_of(StepFn(tuple(ax), tuple(ay))), delta)
    pb = reduce(contour_of(StepFn(tuple(bx), tuple(by))), delta)
    lo, levels = combine_levels(pa, pb, sigma)
    xs: list = []
    ys: list = []
    for i, x in enumerate(levels):
        lvl = lo + i
        y = (lvl + (lvl & 1)) * sigma
        if xs and xs[-1] == x:
            ys[-1] = y
        elif ys and ys[-1] == y:
            continue
        else:
            xs.append(x)
            ys.append(y)
    return xs, ys
