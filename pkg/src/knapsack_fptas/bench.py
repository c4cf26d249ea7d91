"""Timing harness: per-instance benchmark records and the sparse-solver scaling sweep."""

from __future__ import annotations

import csv
import math
import os
import random
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Callable, Iterable, List, Optional, Sequence, TextIO

from .core import Instance, Item
from .instances import gen_instance
from .oracles import OracleRefused, exact_dp
from .pipeline import _efficiency_cmp, knapsack_fptas
from .sparse import solve_sparse

CSV_COLUMNS = ("algo", "eps", "n", "seed", "elapsed_s", "sol", "opt", "ratio")
SCALING_INVERSES = (256, 512, 1024, 2048, 4096)


def worker_count() -> int:
    """Size of the worker pool; ``KNAP_THREADS`` caps it, default is serial."""
    raw = os.environ.get("KNAP_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def ordered_map(fn: Callable, args: Sequence) -> list:
    """map() over a process pool when one is configured; results keep input order."""
    workers = min(worker_count(), len(args))
    if workers <= 1:
        return [fn(a) for a in args]
    with ProcessPoolExecutor(workers) as pool:
        return list(pool.map(fn, args, chunksize=max(1, len(args) // (4 * workers))))


def greedy_value(inst: Instance) -> int:
    """Efficiency-order greedy (skipping items that no longer fit), or the best single item."""
    rows = sorted(((it.profit, it.weight, i) for i, it in enumerate(inst.items)),
                  key=cmp_to_key(_efficiency_cmp))
    room, total = inst.capacity, 0
    for p, w, _ in rows:
        if w <= room:
            room -= w
            total += p
    single = max((it.profit for it in inst.items if it.weight <= inst.capacity), default=0)
    return max(total, single)


def run_algo(algo: str, inst: Instance, eps: Fraction) -> Fraction:
    if algo == "fptas":
        return knapsack_fptas(inst, eps).sol
    if algo == "greedy":
        return Fraction(greedy_value(inst))
    if algo == "exact":
        return Fraction(exact_dp(inst))
    raise ValueError(f"unknown algorithm {algo!r}")


def format_value(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else str(v)


@dataclass(frozen=True)
class BenchRecord:
    algo: str
    eps: str
    n: int
    seed: int
    elapsed_s: float
    sol: Fraction
    opt: Optional[int]
    ratio: Optional[Fraction]

    def row(self, timing: bool = True) -> list:
        return [self.algo, self.eps, self.n, self.seed,
                f"{self.elapsed_s:.6f}" if timing else "",
                format_value(self.sol),
                "" if self.opt is None else self.opt,
                "" if self.ratio is None else f"{float(self.ratio):.6f}"]


def _bench_one(job) -> BenchRecord:
    algo, eps_label, seed, n, profile, max_w, reps = job
    eps = Fraction(eps_label)
    inst = gen_instance(seed, profile, n, max_w)
    times = []
    sol = Fraction(0)
    for _ in range(reps):
        t0 = time.perf_counter()
        sol = run_algo(algo, inst, eps)
        times.append(time.perf_counter() - t0)
    try:
        opt: Optional[int] = exact_dp(inst)
    except OracleRefused:
        opt = None
    ratio = None if opt is None else (Fraction(1) if opt == 0 else sol / opt)
    return BenchRecord(algo, eps_label, inst.n, seed, statistics.median(times), sol, opt, ratio)


def run_bench(eps_list: Sequence[str], reps: int = 3, seeds: int = 3, n: int = 100,
              profile: str = "uniform", algos: Sequence[str] = ("fptas",),
              max_w: int = 10**6) -> List[BenchRecord]:
    """One record per (algo, eps, seed); times are medians over ``reps`` runs."""
    if reps < 1:
        raise ValueError("reps must be at least 1")
    jobs = [(a, str(e), s, n, profile, max_w, reps) for a in algos for e in eps_list for s in range(seeds)]
    return ordered_map(_bench_one, jobs)


def write_csv(records: Iterable[BenchRecord], fh: TextIO, timing: bool = True) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.row(timing))


def scaling_items(inv: int, seed: int = 0) -> list:
    """n = inv items with profits in [1, 2) on the 1/inv grid."""
    r = random.Random(seed * 7919 + inv)
    return [Item(r.randint(inv, 2 * inv - 1), r.randint(1, 10**6)) for _ in range(inv)]


def time_sparse(inv: int, reps: int = 1, seed: int = 0) -> float:
    items = scaling_items(inv, seed)
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        solve_sparse(items, Fraction(1, inv))
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of log(y) against log(x)."""
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    mx, my = statistics.fmean(lx), statistics.fmean(ly)
    num = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
    den = sum((a - mx) ** 2 for a in lx)
    return num / den


def sparse_scaling(inverses: Sequence[int] = SCALING_INVERSES, reps: int = 1) -> dict:
    times = [time_sparse(inv, reps) for inv in inverses]
    return {"inverses": list(inverses), "seconds": times, "slope": loglog_slope(inverses, times)}
