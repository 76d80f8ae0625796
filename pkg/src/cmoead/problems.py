"""Built-in constrained bi-objective benchmarks and the problem catalogue.

All constraints are written in the ``h_k(x) <= 0`` feasible convention.

References:
    Osyczka, A., & Kundu, S. (1995). A new method to solve generalized
    multicriteria optimization problems using the simple genetic algorithm.
    Tanaka, M., et al. (1995). GA-based decision support system for
    multicriteria optimization.
    Deb, K., & Sundar, J. (2006). Reference point based multi-objective
    optimization using evolutionary algorithms.
    Miyakawa, M., Sato, H., & Sato, Y. (2016). Controlling selection area of
    useful infeasible solutions in directed mating for evolutionary
    constrained multi-objective optimization.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .core import ConfigurationError, Problem

SQRT2 = np.sqrt(2.0)


def _osy(x):
    x1, x2, x3, x4, x5, x6 = x
    f1 = -(25.0 * (x1 - 2.0) ** 2 + (x2 - 2.0) ** 2 + (x3 - 1.0) ** 2 + (x4 - 4.0) ** 2 + (x5 - 1.0) ** 2)
    f2 = float(np.dot(x, x))
    h = (
        2.0 - x1 - x2,
        x1 + x2 - 6.0,
        x2 - x1 - 2.0,
        x1 - 3.0 * x2 - 2.0,
        (x3 - 3.0) ** 2 + x4 - 4.0,
        4.0 - (x5 - 3.0) ** 2 - x6,
    )
    return (f1, f2), h


def osy() -> Problem:
    return Problem(
        name="osy",
        n=6,
        m=2,
        p=6,
        lower=np.array([0.0, 0.0, 1.0, 0.0, 1.0, 0.0]),
        upper=np.array([10.0, 10.0, 5.0, 6.0, 5.0, 10.0]),
        function=_osy,
        hv_reference=np.array([-30.0, 80.0]),
        description="Osyczka-Kundu, 6 variables, 6 constraints",
    )


def _tnk(x):
    x1, x2 = x
    h1 = 1.0 + 0.1 * np.cos(16.0 * np.arctan2(x1, x2)) - x1 * x1 - x2 * x2
    h2 = (x1 - 0.5) ** 2 + (x2 - 0.5) ** 2 - 0.5
    return (x1, x2), (h1, h2)


def tnk() -> Problem:
    return Problem(
        name="tnk",
        n=2,
        m=2,
        p=2,
        lower=np.zeros(2),
        upper=np.full(2, np.pi),
        function=_tnk,
        hv_reference=np.array([1.2, 1.2]),
        description="Tanaka, discontinuous front, 2 constraints",
    )


MCDTLZ_K = 10


def _mcdtlz2(x):
    g = float(np.sum((x[2:] - 0.5) ** 2))
    f1 = (1.0 + g) * x[0]
    f2 = (1.0 + g) * x[1]
    h1 = 1.0 - f1 * f1 / 4.0 - f2 * f2
    h2 = 1.0 - f2 * f2 / 4.0 - f1 * f1
    return (f1, f2), (h1, h2)


def mcdtlz2() -> Problem:
    n = 2 + MCDTLZ_K
    return Problem(
        name="mcdtlz",
        n=n,
        m=2,
        p=2,
        lower=np.zeros(n),
        upper=np.ones(n),
        function=_mcdtlz2,
        hv_reference=np.array([1.0, 1.0]),
        description="bi-objective m-constraint DTLZ, front on the feasibility boundary",
    )


def _welded_beam(x):
    h, l, t, b = x
    f_cost = 1.10471 * h * h * l + 0.04811 * t * b * (14.0 + l)
    f_deflection = 2.1952 / (t**3 * b)
    r = np.sqrt(0.25 * (l * l + (h + t) ** 2))
    tau1 = 6000.0 / (SQRT2 * h * l)
    tau2 = 6000.0 * (14.0 + 0.5 * l) * r / (2.0 * SQRT2 * h * l * (l * l / 12.0 + 0.25 * (h + t) ** 2))
    tau = np.sqrt(tau1 * tau1 + tau2 * tau2 + l * tau1 * tau2 / r)
    sigma = 504000.0 / (t * t * b)
    pc = 64746.022 * (1.0 - 0.0282346 * t) * t * b**3
    hv = (tau - 13600.0, sigma - 30000.0, h - b, 6000.0 - pc)
    return (f_deflection, f_cost), hv


def welded_beam() -> Problem:
    """Welded beam with objectives ordered (deflection, cost) to match its HV reference (0.3, 50)."""
    return Problem(
        name="wb",
        n=4,
        m=2,
        p=4,
        lower=np.array([0.125, 0.1, 0.1, 0.125]),
        upper=np.array([5.0, 10.0, 10.0, 5.0]),
        function=_welded_beam,
        hv_reference=np.array([0.3, 50.0]),
        description="welded beam: minimize end deflection and fabrication cost",
    )


@dataclass(frozen=True)
class DesignVariable:
    name: str
    unit: str
    lower: float
    upper: float


@dataclass(frozen=True)
class HreMetadata:
    variables: tuple[DesignVariable, ...]
    constraints: tuple[tuple[str, float, str], ...]
    objectives: tuple[tuple[str, str], ...]
    hv_reference: tuple[float, float]

    @property
    def lower(self) -> np.ndarray:
        return np.array([v.lower for v in self.variables])

    @property
    def upper(self) -> np.ndarray:
        return np.array([v.upper for v in self.variables])


HRE = HreMetadata(
    variables=(
        DesignVariable("lox_mass_flow", "kg/s", 1.0, 30.0),
        DesignVariable("fuel_length", "m", 1.0, 10.0),
        DesignVariable("initial_port_radius", "mm", 10.0, 200.0),
        DesignVariable("combustion_time", "s", 15.0, 35.0),
        DesignVariable("chamber_pressure", "MPa", 3.0, 4.0),
        DesignVariable("nozzle_aperture_ratio", "-", 5.0, 7.0),
    ),
    # (quantity, upper limit, unit); evaluators report h_k = value - limit
    constraints=(("aspect_ratio", 25.0, "-"), ("max_dynamic_pressure", 100.0, "kPa"), ("max_acceleration", 5.0, "G")),
    objectives=(("max_altitude", "maximize"), ("initial_total_mass", "minimize")),
    hv_reference=(2000.0, 0.0),
)


PROBLEMS: dict[str, Callable[[], Problem]] = {
    "osy": osy,
    "tnk": tnk,
    "mcdtlz": mcdtlz2,
    "wb": welded_beam,
}


def get_problem(name: str) -> Problem:
    key = name.strip().lower()
    aliases = {"mcdtlz2": "mcdtlz", "welded_beam": "wb", "welded-beam": "wb"}
    key = aliases.get(key, key)
    if key not in PROBLEMS:
        raise ConfigurationError(f"unknown problem {name!r}; valid values: {', '.join(PROBLEMS)}")
    return PROBLEMS[key]()
