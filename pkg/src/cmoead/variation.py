"""Simulated binary crossover and bounded polynomial mutation.

Design vectors here are short (a handful of variables), so the operators
loop over Python floats after one bulk random draw instead of paying numpy
call overhead per variable.
"""

from __future__ import annotations

import numpy as np


def _as_list(bound, n: int) -> list[float]:
    if np.ndim(bound) == 0:
        return [float(bound)] * n
    return np.asarray(bound, dtype=float).tolist()


def sbx_spread(u, eta_c: float):
    """Spread factor beta for uniform draws ``u`` in [0, 1)."""
    u = np.asarray(u, dtype=float)
    e = 1.0 / (eta_c + 1.0)
    return np.where(u <= 0.5, (2.0 * u) ** e, (0.5 / (1.0 - u)) ** e)


def sbx_children(p1, p2, beta):
    """Unclamped SBX children; ``c1 + c2 == p1 + p2`` up to rounding."""
    c1 = 0.5 * ((1.0 + beta) * p1 + (1.0 - beta) * p2)
    c2 = 0.5 * ((1.0 - beta) * p1 + (1.0 + beta) * p2)
    return c1, c2


def sbx_crossover(p1, p2, pc: float, eta_c: float, lower, upper, rng, clamp: bool = True):
    """Return two children of ``p1`` and ``p2``.

    With probability ``1 - pc`` the parents are copied. Otherwise each variable
    is recombined with probability 0.5 and copied from its parent otherwise.
    """
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    if rng.random() >= pc:
        return p1.copy(), p2.copy()
    n = p1.size
    draws = rng.random(2 * n).tolist()
    a, b = p1.tolist(), p2.tolist()
    c1, c2 = list(a), list(b)
    lo, hi = _as_list(lower, n), _as_list(upper, n)
    e = 1.0 / (eta_c + 1.0)
    for k in range(n):
        if draws[k] >= 0.5:
            continue
        u = draws[n + k]
        beta = (2.0 * u) ** e if u <= 0.5 else (0.5 / (1.0 - u)) ** e
        x1 = 0.5 * ((1.0 + beta) * a[k] + (1.0 - beta) * b[k])
        x2 = 0.5 * ((1.0 - beta) * a[k] + (1.0 + beta) * b[k])
        if clamp:
            x1 = min(max(x1, lo[k]), hi[k])
            x2 = min(max(x2, lo[k]), hi[k])
        c1[k], c2[k] = x1, x2
    return np.array(c1), np.array(c2)


def polynomial_mutation(x, pm: float, eta_m: float, lower, upper, rng):
    """Bounded polynomial mutation, each variable mutated with probability ``pm``."""
    x = np.asarray(x, dtype=float)
    n = x.size
    draws = rng.random(2 * n).tolist()
    hit = [k for k in range(n) if draws[k] < pm]
    if not hit:
        return x.copy()
    y = x.tolist()
    lo, hi = _as_list(lower, n), _as_list(upper, n)
    p = 1.0 / (eta_m + 1.0)
    for k in hit:
        xl, xu, xk, u = lo[k], hi[k], y[k], draws[n + k]
        span = xu - xl
        if u < 0.5:
            val = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - (xk - xl) / span) ** (eta_m + 1.0)
            delta = val**p - 1.0
        else:
            val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - (xu - xk) / span) ** (eta_m + 1.0)
            delta = 1.0 - val**p
        y[k] = min(max(xk + delta * span, xl), xu)
    return np.array(y)
