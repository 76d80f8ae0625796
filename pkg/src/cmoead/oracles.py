"""Independent reference computations used by ``cmoead validate`` and the test suite.

Everything here is deliberately written a second way: scalar ``math`` code
for the problem formulas (constraints stated as ``g >= 0`` then negated),
quadratic loops for dominance, and Monte-Carlo sampling for hypervolume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def brute_force_nondominated(points) -> list[tuple]:
    pts = [tuple(float(v) for v in p) for p in points]
    out = []
    for a_idx, a in enumerate(pts):
        if a in pts[:a_idx]:
            continue
        dominated = False
        for b in pts:
            if all(bv <= av for av, bv in zip(a, b)) and any(bv < av for av, bv in zip(a, b)):
                dominated = True
                break
        if not dominated:
            out.append(a)
    return out


def monte_carlo_hypervolume(points, reference, samples: int, rng) -> tuple[float, float]:
    """Hit-count estimate of the 2-D hypervolume and its standard error.

    Samples uniformly in the box spanned by the componentwise minimum of the
    points and the reference.
    """
    P = np.asarray(points, dtype=float)
    ref = np.asarray(reference, dtype=float)
    P = P[np.all(P <= ref, axis=1)]
    if len(P) == 0:
        return 0.0, 0.0
    lo = P.min(axis=0)
    box = float(np.prod(ref - lo))
    S = lo + rng.random((samples, 2)) * (ref - lo)
    order = np.argsort(P[:, 0])
    px, py = P[order, 0], P[order, 1]
    prefix_min = np.minimum.accumulate(py)
    # a sample is dominated iff some point has x <= sx and y <= sy
    k = np.searchsorted(px, S[:, 0], side="right")
    hit = (k > 0) & (S[:, 1] >= np.where(k > 0, prefix_min[np.maximum(k - 1, 0)], np.inf))
    frac = hit.mean()
    return box * frac, box * math.sqrt(frac * (1.0 - frac) / samples)


def osy_reference(x):
    x1, x2, x3, x4, x5, x6 = (float(v) for v in x)
    f1 = -25 * (x1 - 2) ** 2 - (x2 - 2) ** 2 - (x3 - 1) ** 2 - (x4 - 4) ** 2 - (x5 - 1) ** 2
    f2 = x1**2 + x2**2 + x3**2 + x4**2 + x5**2 + x6**2
    g = [
        x1 + x2 - 2,
        6 - x1 - x2,
        2 - x2 + x1,
        2 - x1 + 3 * x2,
        4 - (x3 - 3) ** 2 - x4,
        (x5 - 3) ** 2 + x6 - 4,
    ]
    return [f1, f2], [-v for v in g]


def tnk_reference(x):
    x1, x2 = float(x[0]), float(x[1])
    if x2 == 0.0:
        angle = math.pi / 2 if x1 > 0 else 0.0
    else:
        angle = math.atan(x1 / x2)
    g1 = x1**2 + x2**2 - 1 - 0.1 * math.cos(16 * angle)
    g2 = 0.5 - (x1 - 0.5) ** 2 - (x2 - 0.5) ** 2
    return [x1, x2], [-g1, -g2]


def mcdtlz_reference(x):
    g = 0.0
    for v in x[2:]:
        g += (float(v) - 0.5) ** 2
    f = [(1 + g) * float(x[0]), (1 + g) * float(x[1])]
    c = []
    for j in range(2):
        c.append(f[j] ** 2 / 4 + sum(f[i] ** 2 for i in range(2) if i != j) - 1)
    return f, [-v for v in c]


def welded_beam_reference(x):
    h, l, t, b = (float(v) for v in x)
    cost = 1.10471 * h**2 * l + 0.04811 * t * b * (14 + l)
    delta = 2.1952 / (b * t**3)
    tau_p = 6000 / (math.sqrt(2) * h * l)
    R = math.sqrt(l**2 / 4 + ((h + t) / 2) ** 2)
    M = 6000 * (14 + l / 2)
    J = 2 * (math.sqrt(2) * h * l * (l**2 / 12 + ((h + t) / 2) ** 2))
    tau_pp = M * R / J
    tau = math.sqrt(tau_p**2 + 2 * tau_p * tau_pp * l / (2 * R) + tau_pp**2)
    sigma = 504000 / (t**2 * b)
    pc = 64746.022 * (1 - 0.0282346 * t) * t * b**3
    g = [13600 - tau, 30000 - sigma, b - h, pc - 6000]
    return [delta, cost], [-v for v in g]


REFERENCE_FORMULAS = {
    "osy": osy_reference,
    "tnk": tnk_reference,
    "mcdtlz": mcdtlz_reference,
    "wb": welded_beam_reference,
}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_hypervolume(n_sets: int = 50, samples: int = 1_000_000, seed: int = 0) -> CheckResult:
    from .metrics import hypervolume_2d

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_sets):
        P = rng.random((int(rng.integers(1, 101)), 2))
        exact = hypervolume_2d(P, (1.0, 1.0))
        est, se = monte_carlo_hypervolume(P, (1.0, 1.0), samples, rng)
        z = abs(exact - est) / se if se > 0 else (0.0 if exact == est else math.inf)
        worst = max(worst, z)
    return CheckResult("hypervolume vs Monte-Carlo", worst <= 3.0, f"max |z| = {worst:.3f} over {n_sets} sets")


def check_filter(n_sets: int = 1000, max_points: int = 200, seed: int = 0) -> CheckResult:
    from .metrics import nondominated_filter

    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n_sets):
        k = int(rng.integers(1, max_points + 1))
        # coarse grid values force ties and duplicates
        P = rng.integers(0, 20, size=(k, 2)).astype(float) if rng.random() < 0.5 else rng.random((k, 2))
        got = [tuple(p) for p in nondominated_filter(P)]
        if got != brute_force_nondominated(P):
            bad += 1
    return CheckResult("non-dominated filter vs brute force", bad == 0, f"{bad} mismatches in {n_sets} sets")


def check_problems(n_points: int = 1000, tol: float = 1e-10, seed: int = 0) -> list[CheckResult]:
    from .problems import get_problem

    rng = np.random.default_rng(seed)
    results = []
    for name, formula in REFERENCE_FORMULAS.items():
        prob = get_problem(name)
        worst = 0.0
        for _ in range(n_points):
            x = prob.lower + rng.random(prob.n) * (prob.upper - prob.lower)
            ev = prob.evaluate(x)
            f, h = formula(x)
            err_f = np.abs(ev.objectives - f) / np.maximum(1.0, np.abs(f))
            err_h = np.abs(ev.constraint_values - h) / np.maximum(1.0, np.abs(h))
            worst = max(worst, float(err_f.max()), float(err_h.max()))
        results.append(CheckResult(f"problem {name} vs direct substitution", worst <= tol, f"max error {worst:.2e}"))
    return results


def run_all(quick: bool = False) -> list[CheckResult]:
    if quick:
        return [check_hypervolume(10, 200_000), check_filter(100), *check_problems(200)]
    return [check_hypervolume(), check_filter(), *check_problems()]
