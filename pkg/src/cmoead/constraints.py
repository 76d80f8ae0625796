"""Dominance relations on constraint violations and on objectives."""

from __future__ import annotations

import numpy as np

from .core import DimensionError, Evaluation


def _dominates(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(np.all(a <= b) and np.any(a < b))


def cv_dominates(a: Evaluation, b: Evaluation) -> bool:
    """Pareto dominance of ``a`` over ``b`` on the clamped violation vectors ``max(0, h_k)``."""
    if a.violations.shape != b.violations.shape:
        raise DimensionError("evaluations have different numbers of constraints")
    return _dominates(a.violations, b.violations)


def objective_dominates(a: Evaluation, b: Evaluation) -> bool:
    if a.objectives.shape != b.objectives.shape:
        raise DimensionError("evaluations have different numbers of objectives")
    return _dominates(a.objectives, b.objectives)


def dominates_rows(F: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Boolean mask of the rows of ``F`` that Pareto-dominate ``f`` (minimization)."""
    return (F <= f).all(axis=-1) & (F < f).any(axis=-1)


def dominated_by_rows(F: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Boolean mask of the rows of ``F`` that ``f`` Pareto-dominates."""
    return (f <= F).all(axis=-1) & (f < F).any(axis=-1)
