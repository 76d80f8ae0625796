"""Second-parent selection: neighbourhood, directed, local and hybrid mating.

The first parent is always the focused incumbent ``x^i``; the strategies
differ only in how the second parent is picked.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .core import Individual, Subproblem
from .constraints import dominates_rows
from .decomposition import tchebycheff


class ParentPair(NamedTuple):
    parent_a: Individual
    parent_b: Individual
    used_dm: bool = False
    # True when directed mating found a candidate dominating parent_a
    dominated_found: bool = False


def _uniform_neighbor(i, subproblems, rng) -> Individual:
    nb = subproblems[i].neighborhood
    return subproblems[int(nb[rng.integers(len(nb))])].incumbent


def select_neighborhood(i: int, subproblems: list[Subproblem], rng) -> ParentPair:
    """Plain MOEA/D mating: second parent uniform over the neighbourhood incumbents."""
    return ParentPair(subproblems[i].incumbent, _uniform_neighbor(i, subproblems, rng))


def dm_candidates(i: int, subproblems: list[Subproblem], pool: str = "archive+neighborhood") -> list[Individual]:
    sp = subproblems[i]
    cands = list(sp.archive)
    if pool == "archive+neighborhood":
        cands = [subproblems[j].incumbent for j in sp.neighborhood] + cands
    return cands


def select_dm(
    i: int,
    subproblems: list[Subproblem],
    rng,
    z: np.ndarray,
    pool: str = "archive+neighborhood",
    scalarize=tchebycheff,
) -> ParentPair:
    """Directed mating.

    Among the candidates (neighbour incumbents and/or the archive of ``i``)
    that objective-dominate ``x^i``, pick the one with the smallest scalarized
    value under ``lambda^i``; the first such candidate wins ties. Feasibility
    of the candidate is ignored. With no dominating candidate the second
    parent is drawn uniformly from the neighbourhood.
    """
    sp = subproblems[i]
    a = sp.incumbent
    cands = dm_candidates(i, subproblems, pool)
    if cands:
        F = np.array([c.evaluation.objectives for c in cands])
        dom = dominates_rows(F, a.evaluation.objectives).nonzero()[0]
        if len(dom):
            g = scalarize(F[dom], sp.weight, z)
            return ParentPair(a, cands[int(dom[np.argmin(g)])], True, True)
    return ParentPair(a, _uniform_neighbor(i, subproblems, rng), True, False)


def select_lm(i: int, subproblems: list[Subproblem], rng) -> ParentPair:
    """Local mating: second parent uniform over the feasible neighbour incumbents.

    Falls back to the whole neighbourhood when no neighbour is feasible.
    """
    sp = subproblems[i]
    feasible = [subproblems[j].incumbent for j in sp.neighborhood if subproblems[j].incumbent.feasible]
    if not feasible:
        return select_neighborhood(i, subproblems, rng)
    return ParentPair(sp.incumbent, feasible[int(rng.integers(len(feasible)))])


def select_hybrid(
    i: int,
    subproblems: list[Subproblem],
    r: float,
    rng,
    z: np.ndarray,
    pool: str = "archive+neighborhood",
    scalarize=tchebycheff,
    use_dm: bool | None = None,
) -> ParentPair:
    """Directed mating with probability ``r``, local mating otherwise.

    ``use_dm`` forces the path, for callers that partition a generation
    up front instead of drawing per offspring.
    """
    if use_dm is None:
        use_dm = rng.random() < r
    if use_dm:
        return select_dm(i, subproblems, rng, z, pool, scalarize)
    return select_lm(i, subproblems, rng)


def partition_dm(N: int, r: float, rng) -> np.ndarray:
    """Boolean mask assigning exactly ``round(r*N)`` random subproblems to directed mating."""
    mask = np.zeros(N, dtype=bool)
    mask[rng.permutation(N)[: int(round(r * N))]] = True
    return mask
