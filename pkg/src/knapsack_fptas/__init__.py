"""Approximation scheme for 0-1 knapsack built on monotone step-function merging."""

from .core import (
    NEG_INF,
    ApproxReport,
    Instance,
    Item,
    StepFn,
    eval_step,
    pointwise_max,
    round_down_geometric,
    round_up_grid,
    verify_approx,
)
from .convolution import maxplus_naive, merge_dc, merge_profit_classes, smawk_concave_maxplus
from .geometry import MonotonePointSet, classify, combine, convex_number, reduce
from .instances import gen_instance, load_instance, parse_instance, serialize_instance
from .kernels import BACKEND
from .oracles import OracleRefused, exact_dp, exact_profit_fn
from .pipeline import core_band_solver, greedy_profile, knapsack_fptas, solve
from .sparse import solve_sparse

__all__ = [
    "NEG_INF",
    "ApproxReport",
    "Instance",
    "Item",
    "StepFn",
    "eval_step",
    "pointwise_max",
    "round_down_geometric",
    "round_up_grid",
    "verify_approx",
    "maxplus_naive",
    "merge_dc",
    "merge_profit_classes",
    "smawk_concave_maxplus",
    "MonotonePointSet",
    "classify",
    "combine",
    "convex_number",
    "reduce",
    "gen_instance",
    "load_instance",
    "parse_instance",
    "serialize_instance",
    "BACKEND",
    "OracleRefused",
    "exact_dp",
    "exact_profit_fn",
    "core_band_solver",
    "greedy_profile",
    "knapsack_fptas",
    "solve",
    "solve_sparse",
]
__version__ = "0.1.0"
