"""Constrained MOEA/D with directed mating, infeasible archives and local mating."""

from .core import (
    Algorithm,
    BoundsError,
    ConfigurationError,
    DimensionError,
    Evaluation,
    EvaluationError,
    Individual,
    Problem,
    ProtocolError,
    RunConfig,
    Subproblem,
    make_evaluation,
)
from .external import external_problem
from .harness import HvHistory, compare, derive_seeds, run, run_experiment
from .metrics import aggregate_runs, hypervolume_2d, nondominated_filter
from .problems import PROBLEMS, get_problem

__all__ = [
    "Algorithm",
    "BoundsError",
    "ConfigurationError",
    "DimensionError",
    "Evaluation",
    "EvaluationError",
    "HvHistory",
    "Individual",
    "PROBLEMS",
    "Problem",
    "ProtocolError",
    "RunConfig",
    "Subproblem",
    "aggregate_runs",
    "compare",
    "derive_seeds",
    "external_problem",
    "get_problem",
    "hypervolume_2d",
    "make_evaluation",
    "nondominated_filter",
    "run",
    "run_experiment",
]
