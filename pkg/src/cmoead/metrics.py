"""Non-dominated filtering, exact 2-D hypervolume and multi-run aggregation."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .core import DimensionError


def nondominated_mask(points) -> np.ndarray:
    """Mask of the first copy of each point that no other point dominates."""
    P = np.asarray(points, dtype=float)
    if P.ndim != 2:
        raise DimensionError("points must be a 2-D array (n_points, m)")
    n = len(P)
    if n == 0:
        return np.zeros(0, dtype=bool)
    le = np.all(P[:, None, :] <= P[None, :, :], axis=-1)  # le[a, b]: a weakly better than b
    lt = np.any(P[:, None, :] < P[None, :, :], axis=-1)
    dominated = np.any(le & lt, axis=0)
    equal = le & le.T
    earlier_copy = np.any(np.tril(equal, k=-1), axis=1)
    return ~dominated & ~earlier_copy


def nondominated_filter(points) -> np.ndarray:
    """Non-dominated subset of ``points`` with duplicates collapsed, input order kept."""
    P = np.asarray(points, dtype=float)
    if P.size == 0:
        return P.reshape(0, P.shape[-1] if P.ndim == 2 else 0)
    return P[nondominated_mask(P)]


def hypervolume_2d(points, reference) -> float:
    """Area dominated by ``points`` and bounded by ``reference`` (minimization).

    Points that are not componentwise ``<=`` the reference contribute nothing.
    """
    ref = np.asarray(reference, dtype=float)
    P = np.asarray(points, dtype=float)
    if ref.shape != (2,) or (P.size and (P.ndim != 2 or P.shape[1] != 2)):
        raise DimensionError("hypervolume_2d supports exactly two objectives")
    if P.size == 0:
        return 0.0
    P = P[np.all(P <= ref, axis=1)]
    if len(P) == 0:
        return 0.0
    P = P[np.lexsort((P[:, 1], P[:, 0]))]
    # sweep in f1 order keeping strict improvements in f2
    best = np.minimum.accumulate(P[:, 1])
    keep = np.ones(len(P), dtype=bool)
    keep[1:] = P[1:, 1] < best[:-1]
    P = P[keep]
    widths = np.diff(np.append(P[:, 0], ref[0]))
    return float(np.sum(widths * (ref[1] - P[:, 1])))


class FeasibleFront:
    """Unbounded archive of the non-dominated feasible points seen so far."""

    def __init__(self, m: int, n: int):
        self.F = np.empty((0, m))
        self.X = np.empty((0, n))

    def __len__(self):
        return len(self.F)

    def add(self, f: np.ndarray, x: np.ndarray) -> bool:
        F = self.F
        if len(F):
            if np.any(np.all(F <= f, axis=1)):
                return False
            keep = ~np.all(f <= F, axis=1)
            self.F = np.vstack([F[keep], f])
            self.X = np.vstack([self.X[keep], x])
        else:
            self.F = f[None, :].copy()
            self.X = x[None, :].copy()
        return True


@dataclass(frozen=True)
class RunStatistics:
    mean: np.ndarray
    std: np.ndarray
    # set when fewer than two runs were given and std is reported as zeros
    std_undefined: bool = False


def aggregate_runs(histories) -> RunStatistics:
    """Per-generation mean and sample (ddof=1) standard deviation across runs."""
    H = np.asarray([np.asarray(h, dtype=float) for h in histories])
    if H.ndim != 2 or len(H) == 0:
        raise DimensionError("histories must be a nonempty list of equal-length series")
    mean = H.mean(axis=0)
    if len(H) < 2:
        warnings.warn("standard deviation undefined for a single run; reporting zeros", RuntimeWarning, stacklevel=2)
        return RunStatistics(mean, np.zeros_like(mean), True)
    return RunStatistics(mean, H.std(axis=0, ddof=1))
