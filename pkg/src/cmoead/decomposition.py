"""Weight vectors, neighbourhoods, scalarizing functions and the ideal-point estimate."""

from __future__ import annotations

import itertools
import math

import numpy as np

from .core import ConfigurationError


def generate_weights(N: int, m: int) -> np.ndarray:
    """Return an ``(N, m)`` array of weight vectors spread evenly over the unit simplex.

    For two objectives row ``i`` is ``(i/(N-1), 1 - i/(N-1))``. For ``m > 2``
    a simplex-lattice design is used, which requires ``N`` to equal
    ``C(H+m-1, m-1)`` for some number of divisions ``H``.
    """
    if N < 2:
        raise ConfigurationError("at least two weight vectors are required")
    if m < 2:
        raise ConfigurationError("weight vectors need m >= 2 objectives")
    if m == 2:
        a = np.arange(N, dtype=float) / (N - 1)
        return np.column_stack([a, 1.0 - a])

    H = 1
    while math.comb(H + m - 1, m - 1) < N:
        H += 1
    if math.comb(H + m - 1, m - 1) != N:
        raise ConfigurationError(f"N={N} is not a simplex-lattice size for m={m}")
    rows = []
    for bars in itertools.combinations(range(H + m - 1), m - 1):
        parts = np.diff((-1,) + bars + (H + m - 1,)) - 1
        rows.append(parts / H)
    return np.array(rows, dtype=float)


def build_neighborhoods(weights: np.ndarray, T: int) -> np.ndarray:
    """Indices of the ``T`` nearest weight vectors for each vector, self included.

    Distance ties go to the lower index. Returns an ``(N, T)`` int array.
    """
    weights = np.asarray(weights, dtype=float)
    N = len(weights)
    if not 1 <= T <= N:
        raise ConfigurationError(f"neighbourhood size T={T} must lie in [1, {N}]")
    d = np.linalg.norm(weights[:, None, :] - weights[None, :, :], axis=-1)
    # lattice distances that are equal in exact arithmetic must tie exactly
    d = np.round(d, 12)
    return np.argsort(d, axis=1, kind="stable")[:, :T]


def tchebycheff(f, lam, z) -> np.ndarray | float:
    """Weighted Tchebycheff value ``max_j lam_j |f_j - z_j|``; broadcasts over leading axes."""
    return (np.asarray(lam) * np.abs(np.asarray(f) - z)).max(axis=-1)


def weighted_sum(f, lam, z=None) -> np.ndarray | float:
    """Weighted sum ``sum_j lam_j f_j``. ``z`` is accepted and ignored so both scalarizers share a signature."""
    return (np.asarray(lam) * np.asarray(f)).sum(axis=-1)


SCALARIZERS = {"tchebycheff": tchebycheff, "weighted_sum": weighted_sum}


def update_reference_point(z: np.ndarray, f: np.ndarray) -> np.ndarray:
    return np.minimum(z, f)


def initial_reference_point(m: int) -> np.ndarray:
    return np.full(m, np.inf)
