"""Command-line entry point: ``solve``, ``verify`` and ``bench``.

Exit codes: 0 on success, 1 when a verification suite fails, 2 on malformed
input or arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from .bench import format_value, run_algo, run_bench, write_csv
from .instances import PROFILES, load_instance
from .oracles import OracleRefused
from .pipeline import knapsack_fptas
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_eps(text: str) -> Fraction:
    try:
        eps = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0 < eps < 1:
        raise argparse.ArgumentTypeError(f"eps must lie in (0, 1), got {text}")
    return eps


def parse_eps_list(text: str) -> List[str]:
    tokens = [t.strip() for t in text.split(",") if t.strip()]
    if not tokens:
        raise argparse.ArgumentTypeError("empty eps list")
    for t in tokens:
        parse_eps(t)
    return tokens


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="knapsack-fptas", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="solve one instance file")
    s.add_argument("--eps", type=parse_eps, default=Fraction(1, 10))
    s.add_argument("--input", required=True, help="instance file (text or JSON)")
    s.add_argument("--algo", choices=("fptas", "greedy", "exact"), default="fptas")
    s.add_argument("--json", action="store_true", help="also print the report as one-line JSON")

    v = sub.add_parser("verify", help="run seeded oracle suites")
    v.add_argument("--eps", type=parse_eps, default=None,
                   help="single eps for the end-to-end suite (default: 0.5, 0.1, 0.05)")
    v.add_argument("--seeds", type=positive_int, default=None)
    v.add_argument("--n", type=positive_int, default=None, help="largest instance size (end2end)")
    v.add_argument("--suite", action="append", choices=sorted(SUITES),
                   help="may be repeated; default runs all suites")

    b = sub.add_parser("bench", help="time solvers and write CSV records")
    b.add_argument("--eps-list", type=parse_eps_list, required=True)
    b.add_argument("--reps", type=positive_int, default=3)
    b.add_argument("--seeds", type=positive_int, default=3)
    b.add_argument("--n", type=positive_int, default=100)
    b.add_argument("--profile", choices=PROFILES, default="uniform")
    b.add_argument("--algo", action="append", choices=("fptas", "greedy", "exact"))
    b.add_argument("--out", default="-", help="CSV path, '-' for stdout")
    b.add_argument("--no-timing", action="store_true",
                   help="leave elapsed_s empty so reruns are byte-identical")
    return p


def _cmd_solve(args) -> int:
    try:
        inst = load_instance(args.input)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.algo == "fptas":
            report = knapsack_fptas(inst, args.eps)
            sol = report.sol
            payload = report.to_dict()
        else:
            sol = run_algo(args.algo, inst, args.eps)
            payload = {"sol": str(sol), "n": inst.n, "capacity": inst.capacity}
    except (OracleRefused, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(format_value(sol))
    if args.json:
        payload["algo"] = args.algo
        print(json.dumps(payload, sort_keys=True))
    return EXIT_OK


def _cmd_verify(args) -> int:
    names = args.suite or list(SUITES)
    ok = True
    for name in names:
        res = run_suite(name, seeds=args.seeds, n_max=args.n, eps=args.eps)
        print(res.to_json())
        print(res.summary(), file=sys.stderr)
        ok &= res.passed
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_bench(args) -> int:
    records = run_bench(args.eps_list, reps=args.reps, seeds=args.seeds, n=args.n,
                        profile=args.profile, algos=args.algo or ("fptas",))
    if args.out == "-":
        write_csv(records, sys.stdout, timing=not args.no_timing)
    else:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                write_csv(records, fh, timing=not args.no_timing)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"solve": _cmd_solve, "verify": _cmd_verify, "bench": _cmd_bench}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
