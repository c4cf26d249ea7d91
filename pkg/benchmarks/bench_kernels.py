"""Compare the compiled and pure-Python kernel backends on identical random inputs.

    python3 benchmarks/bench_kernels.py [--sizes 64,256,1024] [--reps 3]
"""

import argparse
import random
import statistics
import time

from knapsack_fptas import _purekernels as pure

try:
    from knapsack_fptas import _kernels as compiled
except ImportError:
    compiled = None


def staircase(r, k, step=1):
    xs, ys = [0], [0]
    for _ in range(k - 1):
        xs.append(xs[-1] + r.randint(1, 50))
        ys.append(ys[-1] + step * r.randint(1, 20))
    return xs, ys


def concave_weights(r, k):
    steps = sorted((r.randint(0, 30) for _ in range(k - 1)), reverse=True)
    out = [0]
    for s in steps:
        out.append(out[-1] + s)
    return out


def cases(size, seed=0):
    r = random.Random(seed + size)
    ax, ay = staircase(r, size)
    bx, by = staircase(r, size)
    phi = concave_weights(r, size)
    gamma = sorted(r.randint(0, 1000) for _ in range(size))
    return {
        "maxplus_steps": lambda m: m.maxplus_steps(ax, ay, bx, by),
        "lower_block_conv": lambda m: m.lower_block_conv(phi, gamma),
        "level_merge": lambda m: m.level_merge(ax, ay, bx, by, 1, size // 2),
    }


def median_time(fn, reps):
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="64,256,1024")
    ap.add_argument("--reps", type=int, default=3)
    args = ap.parse_args()
    if compiled is None:
        print("compiled extension not built; only the pure backend is available")
    print(f"{'kernel':<18}{'size':>6}{'pure_s':>12}{'cython_s':>12}{'speedup':>10}")
    for size in (int(s) for s in args.sizes.split(",")):
        for name, call in cases(size).items():
            tp = median_time(lambda: call(pure), args.reps)
            if compiled is None:
                print(f"{name:<18}{size:>6}{tp:>12.5f}{'-':>12}{'-':>10}")
                continue
            if call(pure) != call(compiled):
                raise SystemExit(f"backends disagree on {name} at size {size}")
            tc = median_time(lambda: call(compiled), args.reps)
            print(f"{name:<18}{size:>6}{tp:>12.5f}{tc:>12.5f}{tp / max(tc, 1e-9):>9.1f}x")


if __name__ == "__main__":
    main()
