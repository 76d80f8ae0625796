"""Replacement rules applied to the focused neighbourhood after each offspring.

Every rule compares the offspring ``y`` with each neighbour incumbent ``x^j``
independently, so the branch logic is evaluated as boolean masks over the
neighbourhood. The masks are mutually exclusive and follow the branch order
of the sequential procedures exactly.
"""

from __future__ import annotations

import numpy as np

from .core import Individual, Subproblem
from .decomposition import tchebycheff


def _neighbor_weights(subproblems: list[Subproblem], i: int) -> np.ndarray:
    sp = subproblems[i]
    if sp.neighbor_weights is None:
        sp.neighbor_weights = np.array([subproblems[j].weight for j in sp.neighborhood])
    return sp.neighbor_weights


def _gather(subproblems: list[Subproblem], i: int):
    nb = subproblems[i].neighborhood
    incumbents = [subproblems[j].incumbent for j in nb]
    lam = _neighbor_weights(subproblems, i)
    F = np.array([x.evaluation.objectives for x in incumbents])
    omega = np.array([x.evaluation.violation_sum for x in incumbents])
    return incumbents, lam, F, omega


def _replace(subproblems, nb, mask, y) -> int:
    hits = mask.nonzero()[0]
    for k in hits:
        subproblems[nb[k]].incumbent = y
    return len(hits)


def update_cmoead(subproblems: list[Subproblem], y: Individual, i: int, z: np.ndarray, scalarize=tchebycheff) -> int:
    """Feasibility-first replacement; returns the number of incumbents replaced.

    Feasible ``y`` replaces infeasible neighbours and feasible neighbours it
    beats on the scalarized value. Infeasible ``y`` only replaces infeasible
    neighbours with a strictly larger violation sum.
    """
    nb = subproblems[i].neighborhood
    _, lam, F, omega = _gather(subproblems, i)
    return _replace(subproblems, nb, _cmoead_mask(y, lam, F, omega, z, scalarize), y)


def _cmoead_mask(y, lam, F, omega, z, scalarize):
    feas_x = omega == 0.0
    if y.evaluation.violation_sum == 0.0:
        better = scalarize(y.evaluation.objectives, lam, z) < scalarize(F, lam, z)
        return (feas_x & better) | ~feas_x
    return ~feas_x & (y.evaluation.violation_sum < omega)


def archive_insert(
    sp: Subproblem, y: Individual, z: np.ndarray, scalarize=tchebycheff, score: float | None = None
) -> Individual | None:
    """Append ``y`` to ``sp.archive``; past capacity drop the worst member and return it.

    Worst is the largest scalarized value under ``sp.weight``, then the largest
    violation sum, then the oldest entry. ``score`` is ``y``'s scalarized value
    when the caller already has it.
    """
    arch = sp.archive
    g = arch.scores(sp.weight, z, scalarize)
    if score is None:
        score = float(scalarize(y.evaluation.objectives, sp.weight, z))
    if len(arch) >= sp.capacity and g and score > max(g):
        # y would be the unique worst member
        return y
    arch.append(y, score)
    if len(arch) <= sp.capacity:
        return None
    g = arch.scores(sp.weight, z, scalarize)
    top = max(g)
    ties = [k for k, v in enumerate(g) if v == top]
    if len(ties) > 1:
        # oldest among the largest violation sums
        worst_omega = max(arch[k].evaluation.violation_sum for k in ties)
        ties = [k for k in ties if arch[k].evaluation.violation_sum == worst_omega]
    return arch.pop(ties[0])


def update_dma(
    subproblems: list[Subproblem], y: Individual, i: int, z: np.ndarray, alpha: int | None = None, scalarize=tchebycheff
) -> int:
    """Replacement with archiving of objective-superior infeasible offspring.

    Returns the number of incumbents replaced (archive insertions are not counted).
    ``alpha`` overrides each subproblem's own archive capacity when given.
    """
    nb = subproblems[i].neighborhood
    _, lam, F, omega = _gather(subproblems, i)
    ev = y.evaluation
    feas_x = omega == 0.0
    gy = scalarize(ev.objectives, lam, z)
    better = gy < scalarize(F, lam, z)
    if ev.violation_sum == 0.0:
        replace = (feas_x & better) | ~feas_x
        to_archive = np.zeros_like(feas_x)
    else:
        to_archive = feas_x & better
        replace = np.zeros_like(feas_x)
        infeasible = (~feas_x).nonzero()[0]
        if len(infeasible):
            V = np.array([subproblems[nb[k]].incumbent.evaluation.violations for k in infeasible])
            v = ev.violations
            y_dom = (v <= V).all(axis=1) & (v < V).any(axis=1)
            x_dom = (V <= v).all(axis=1) & (V < v).any(axis=1)
            replace[infeasible] = y_dom | (~x_dom & better[infeasible])
    for k in to_archive.nonzero()[0]:
        sp = subproblems[nb[k]]
        if alpha is not None:
            sp.capacity = alpha
        archive_insert(sp, y, z, scalarize, float(gy[k]))
    return _replace(subproblems, nb, replace, y)


def update_lm(subproblems: list[Subproblem], y: Individual, i: int, z: np.ndarray, scalarize=tchebycheff) -> int:
    """Feasibility-first replacement restricted to the feasible neighbours of ``i``."""
    nb = subproblems[i].neighborhood
    _, lam, F, omega = _gather(subproblems, i)
    feasible_nb = omega == 0.0
    if not feasible_nb.any():
        return 0
    mask = feasible_nb & _cmoead_mask(y, lam, F, omega, z, scalarize)
    return _replace(subproblems, nb, mask, y)
