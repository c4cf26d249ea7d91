"""Seeded verification suites that compare every solver against an exact oracle.

Each suite is deterministic for a given seed count and returns a
``SuiteResult`` whose JSON form contains no timings, so reruns are
byte-identical.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence

from .convolution import (
    build_class_function,
    maxplus_naive,
    merge_profit_classes,
    smawk_concave_maxplus,
)
from .core import NEG_INF, Instance, Item, StepFn, common_grain, eval_step, verify_approx
from .geometry import (
    APEX,
    classify,
    combine_levels,
    contour_of,
    convex_number,
    convolve_lower_block,
    g_value,
    reduce,
)
from .bench import ordered_map
from .instances import PROFILES, gen_instance
from .oracles import exact_dp, exact_minkowski, exact_profit_fn, g_left_limit, raster_levels
from .pipeline import SortedItems, greedy_profile, knapsack_fptas
from .sparse import solve_sparse

DEFAULT_EPS = (Fraction(1, 2), Fraction(1, 10), Fraction(1, 20))


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, seed, detail: str) -> None:
        self.failures.append({"seed": seed, "detail": detail})

    def to_dict(self) -> dict:
        return {"suite": self.name, "cases": self.cases, "passed": self.passed,
                "failures": self.failures}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.cases - len(self.failures)}/{self.cases}"


def _same_grain(a: StepFn, b: StepFn):
    g = common_grain([a, b])
    return a.with_grain(g), b.with_grain(g)


# ---------------------------------------------------------------- end to end

def instance_size(seed: int, n_max: int) -> int:
    return 1 + random.Random(seed).randrange(n_max)


def _end2end_case(job):
    profile, seed, n_max, eps_list, max_w = job
    inst = gen_instance(seed, profile, instance_size(seed, n_max), max_w)
    opt = exact_dp(inst)
    out = []
    for eps in eps_list:
        sol = knapsack_fptas(inst, eps).sol
        out.append((profile, seed, inst.n, str(eps), opt, str(sol), (1 - eps) * opt <= sol <= opt))
    return out


def suite_end2end(seeds: int = 1000, n_max: int = 100, eps_list: Sequence = DEFAULT_EPS,
                  profiles: Sequence[str] = PROFILES, max_w: int = 10**6) -> SuiteResult:
    res = SuiteResult("end2end")
    eps_list = tuple(Fraction(e) for e in eps_list)
    jobs = [(p, s, n_max, eps_list, max_w) for p in profiles for s in range(seeds)]
    for rows in ordered_map(_end2end_case, jobs):
        for row in rows:
            profile, seed, _, eps, opt, sol, ok = row
            res.cases += 1
            res.rows.append(row)
            if not ok:
                res.fail(seed, f"{profile} eps={eps} opt={opt} sol={sol}")
    return res


# ------------------------------------------------------------- sparse solver

def sparse_case(seed: int):
    r = random.Random(seed)
    inv = r.choice((8, 16, 32))
    n = r.randint(1, 32)
    items = [Item(r.randint(inv, 2 * inv - 1), r.randint(1, 1000)) for _ in range(n)]
    return Fraction(1, inv), items


def suite_sparse(seeds: int = 500) -> SuiteResult:
    res = SuiteResult("sparse")
    for seed in range(seeds):
        eps, items = sparse_case(seed)
        approx = solve_sparse(items, eps)
        exact = exact_profit_fn(items, eps)
        res.cases += 1
        # additive n*eps in value units is n grains of the exact function
        if not verify_approx(approx, exact, 0, len(items), None):
            res.fail(seed, f"n={len(items)} eps={eps}")
    return res


# ------------------------------------------------------------------ geometry

def random_chain(r: random.Random, max_pts: int, sigma: int = 1) -> list:
    """Random monotone point set (no three points on one vertical) with y on the sigma grid."""
    k = r.randint(1, max_pts)
    pts = [(r.randint(0, 5), sigma * r.randint(0, 5))]
    while len(pts) < k:
        x, y = pts[-1]
        kind = r.random()
        if kind < 0.3 and (len(pts) < 2 or pts[-2][0] != x):
            pts.append((x, y + sigma * r.randint(1, 4)))
        elif kind < 0.5:
            pts.append((x + r.randint(1, 4), y))
        else:
            pts.append((x + r.randint(1, 6), y + sigma * r.randint(1, 6)))
    return pts


def random_stepfn(r: random.Random, max_steps: int, span: int = 15, top: int = 20) -> StepFn:
    k = r.randint(1, max_steps)
    xs = sorted(r.sample(range(span), k))
    ys = sorted(r.sample(range(top), k))
    return StepFn(tuple(xs), tuple(ys), Fraction(1), xs[-1])


def region_contains(outer, inner) -> bool:
    """R(inner) inside R(outer), for chains over the same x-range."""
    xs = sorted({p[0] for p in outer} | {p[0] for p in inner})
    for x in xs:
        if g_value(outer, x) < g_value(inner, x):
            return False
        lo, li = g_left_limit(outer, x), g_left_limit(inner, x)
        if li is not None and (lo is None or lo < li):
            return False
    return True


def subtractive_ok(f: StepFn, chain, delta) -> bool:
    """g[chain] - delta <= f <= g[chain] over the bounded domain of f."""
    for i, x in enumerate(f.xs):
        g = g_value(chain, x)
        if g is None or g < f.ys[i]:
            return False
        if i + 1 < len(f.xs):
            top = g_left_limit(chain, f.xs[i + 1])
        else:
            top = g_value(chain, f.x_hi)
        if top is None or top - delta > f.ys[i]:
            return False
    return True


def apexes_on(f: StepFn, chain) -> bool:
    labels = classify(chain).labels
    return all(eval_step(f, p[0]) == p[1] for p, lab in zip(chain, labels) if lab == APEX)


def suite_combine_raster(seeds: int = 500) -> SuiteResult:
    res = SuiteResult("geometry-combine")
    for seed in range(seeds):
        r = random.Random(seed)
        sigma = (1, 2, 4)[seed % 3]
        a, b = random_chain(r, 30, sigma), random_chain(r, 30, sigma)
        res.cases += 1
        if combine_levels(a, b, sigma) != raster_levels(a, b, sigma):
            res.fail(seed, f"sigma={sigma}")
    return res


def suite_invariants(seeds: int = 300) -> SuiteResult:
    """Random interleavings of exact combining and reduction with the function tracked exactly."""
    res = SuiteResult("geometry-invariants")
    for seed in range(seeds):
        r = random.Random(seed)
        delta = r.randint(1, 8)

        def fresh():
            f = random_stepfn(r, 5)
            return f, list(contour_of(f).points)

        pool = [fresh() for _ in range(3)]
        problems = []
        for _ in range(r.randint(2, 8)):
            op = r.random()
            if op < 0.4 and len(pool) >= 2:
                i, j = r.sample(range(len(pool)), 2)
                (fa, pa), (fb, pb) = pool[i], pool[j]
                merged = (maxplus_naive(fa, fb), exact_minkowski(pa, pb))
                pool = [p for t, p in enumerate(pool) if t not in (i, j)] + [merged]
            elif op < 0.8:
                i = r.randrange(len(pool))
                f, P = pool[i]
                P2 = list(reduce(P, delta).points)
                if not region_contains(P2, P):
                    problems.append("reduce shrank the region")
                dy = P[-1][1] - P[0][1]
                if convex_number(P2) > 2 * -(-dy // delta) + 3:
                    problems.append("convex number too large")
                pool[i] = (f, P2)
            else:
                pool.append(fresh())
            for f, P in pool:
                if not apexes_on(f, P):
                    problems.append("apex off the tracked function")
                if not subtractive_ok(f, P, delta):
                    problems.append("not delta-subtractive")
        res.cases += 1
        if problems:
            res.fail(seed, "; ".join(sorted(set(problems))))
    return res


def suite_geometry(seeds: int = 500, invariant_seeds: int = 300) -> SuiteResult:
    res = SuiteResult("geometry")
    for part in (suite_combine_raster(seeds), suite_invariants(invariant_seeds)):
        res.cases += part.cases
        res.failures.extend({"part": part.name, **f} for f in part.failures)
    return res


def suite_no_accumulation(seeds: int = 200) -> SuiteResult:
    """The merged reduced sets stay within delta of the exact m-fold convolution."""
    res = SuiteResult("no-accumulation")
    for seed in range(seeds):
        r = random.Random(seed)
        m = (2, 3, 4, 5, 6)[seed % 5]
        delta = r.randint(1, 6)
        fs = [random_stepfn(r, 4 if m > 3 else 5, 12, 15) for _ in range(m)]
        chains = [list(reduce(contour_of(f), delta).points) for f in fs]
        total, V = fs[0], chains[0]
        for f, P in zip(fs[1:], chains[1:]):
            total = maxplus_naive(total, f)
            V = exact_minkowski(V, P)
        res.cases += 1
        if not subtractive_ok(total, V, delta):
            res.fail(seed, f"m={m} delta={delta}")
    return res


# --------------------------------------------------------------- convolution

def brute_maxplus(a, b) -> list:
    out = [NEG_INF] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            if u == NEG_INF or v == NEG_INF:
                continue
            if out[i + j] == NEG_INF or u + v > out[i + j]:
                out[i + j] = u + v
    return out


def brute_minplus(a, b) -> list:
    return [min(a[i] + b[k - i] for i in range(len(a)) if 0 <= k - i < len(b))
            for k in range(len(a) + len(b) - 1)]


def concave_case(r: random.Random, max_len: int = 64):
    n = r.randint(1, max_len)
    diffs = sorted((r.randint(-30, 30) for _ in range(n - 1)), reverse=True)
    a = [r.randint(-100, 100)]
    for d in diffs:
        a.append(a[-1] + d)
    b = [NEG_INF if r.random() < 0.1 else r.randint(-200, 200) for _ in range(r.randint(1, max_len))]
    return a, b


def lower_block_case(r: random.Random, max_len: int = 64):
    X = r.randint(1, max_len)
    steps = sorted((r.randint(0, 20) for _ in range(X - 1)), reverse=True)
    phi = [r.randint(0, 10)]
    for s in steps:
        phi.append(phi[-1] + s)
    gamma = sorted(r.randint(0, 400) for _ in range(r.randint(1, max_len)))
    return phi, gamma


def class_case(r: random.Random):
    inv = r.choice((4, 8, 16))
    eps = Fraction(1, inv)
    count = r.randint(1, 8)
    classes = []
    for _ in range(count):
        p = r.randint(inv, 2 * inv)
        ws = [r.randint(1, 40) for _ in range(r.randint(1, 6))]
        classes.append((p, ws))
    B = r.randint(1, 20) * inv
    return eps, classes, B


def suite_convolution(seeds: int = 1000, class_seeds: int = 300) -> SuiteResult:
    res = SuiteResult("convolution")
    for seed in range(seeds):
        r = random.Random(seed)
        a, b = concave_case(r)
        res.cases += 1
        if smawk_concave_maxplus(a, b) != brute_maxplus(a, b):
            res.fail(seed, "smawk")
        phi, gamma = lower_block_case(r)
        res.cases += 1
        if convolve_lower_block(phi, gamma) != brute_minplus(phi, gamma):
            res.fail(seed, "lower block")
    for seed in range(class_seeds):
        r = random.Random(10**6 + seed)
        eps, raw, B = class_case(r)
        classes = [build_class_function(ws, p, B) for p, ws in raw]
        approx = merge_profit_classes(classes, B, eps, eps)
        exact = StepFn.constant(0, eps)
        for p, ws in raw:
            exact = maxplus_naive(exact, exact_profit_fn([Item(p, w) for w in ws], eps))
        exact = exact.capped(B)
        res.cases += 1
        if not verify_approx(approx, exact, eps, 0, None):
            res.fail(seed, "merge_profit_classes")
    return res


# -------------------------------------------------------------------- greedy

def suite_greedy(seeds: int = 300) -> SuiteResult:
    res = SuiteResult("greedy")
    grain = Fraction(1, 16)
    for seed in range(seeds):
        r = random.Random(seed)
        items = [Item(r.randint(16, 32), r.randint(1, 30)) for _ in range(r.randint(1, 16))]
        prof = greedy_profile(SortedItems.build(items, grain))
        exact = exact_profit_fn(items, grain)
        res.cases += 1
        # additive 2 in value units is 32 grains
        if not verify_approx(prof, exact, 0, 32, None):
            res.fail(seed, f"n={len(items)}")
    return res


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "end2end": suite_end2end,
    "sparse": suite_sparse,
    "geometry": suite_geometry,
    "no-accumulation": suite_no_accumulation,
    "convolution": suite_convolution,
    "greedy": suite_greedy,
}


def run_suite(name: str, seeds: Optional[int] = None, n_max: Optional[int] = None,
              eps: Optional[Fraction] = None) -> SuiteResult:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
    kwargs: dict = {}
    if seeds is not None:
        kwargs["seeds"] = seeds
    if name == "end2end":
        if n_max is not None:
            kwargs["n_max"] = n_max
        if eps is not None:
            kwargs["eps_list"] = (Fraction(eps),)
    return SUITES[name](**kwargs)
