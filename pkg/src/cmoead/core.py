"""Shared domain types: evaluations, individuals, subproblems, problems and run configs."""

from __future__ import annotations

import enum
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

# Design vectors, weight vectors and reference points are plain float arrays.
DesignVector = np.ndarray
WeightVector = np.ndarray
ReferencePoint = np.ndarray


class CmoeadError(Exception):
    """Base class for errors raised by this package."""


class ConfigurationError(CmoeadError, ValueError):
    pass


class DimensionError(CmoeadError, ValueError):
    pass


class BoundsError(CmoeadError, ValueError):
    pass


class EvaluationError(CmoeadError, RuntimeError):
    """An evaluator failed; ``x`` holds the offending design vector when known."""

    def __init__(self, message: str, x: np.ndarray | None = None):
        super().__init__(message)
        self.x = None if x is None else np.array(x, dtype=float)


class ProtocolError(EvaluationError):
    pass


@dataclass(frozen=True, eq=False)
class Evaluation:
    objectives: np.ndarray
    constraint_values: np.ndarray
    violations: np.ndarray
    violation_sum: float

    @property
    def feasible(self) -> bool:
        return self.violation_sum == 0.0

    def __eq__(self, other):
        if not isinstance(other, Evaluation):
            return NotImplemented
        return (
            np.array_equal(self.objectives, other.objectives)
            and np.array_equal(self.constraint_values, other.constraint_values)
            and self.violation_sum == other.violation_sum
        )


def make_evaluation(objectives, constraint_values, m: int | None = None, p: int | None = None) -> Evaluation:
    """Build an :class:`Evaluation`, deriving ``v_k = max(0, h_k)`` and their sum.

    ``m`` and ``p`` are the owning problem's dimensions; when given, the array
    lengths are checked against them. Problems with no constraints pass an
    empty constraint array.
    """
    f = np.array(objectives, dtype=float).reshape(-1)
    h = np.array(constraint_values, dtype=float).reshape(-1)
    if f.size == 0:
        raise DimensionError("objectives must be nonempty")
    if m is not None and f.size != m:
        raise DimensionError(f"expected {m} objectives, got {f.size}")
    if p is not None and h.size != p:
        raise DimensionError(f"expected {p} constraint values, got {h.size}")
    v = np.maximum(h, 0.0)
    return Evaluation(f, h, v, float(v.sum()))


@dataclass(frozen=True, eq=False)
class Individual:
    x: np.ndarray
    evaluation: Evaluation

    @property
    def objectives(self) -> np.ndarray:
        return self.evaluation.objectives

    @property
    def violations(self) -> np.ndarray:
        return self.evaluation.violations

    @property
    def violation_sum(self) -> float:
        return self.evaluation.violation_sum

    @property
    def feasible(self) -> bool:
        return self.evaluation.violation_sum == 0.0


class Archive:
    """Insertion-ordered list of individuals with a parallel objective matrix.

    Scalarized values of the members are cached per (weight, reference point,
    scalarizer); reference-point arrays must therefore never be mutated in
    place, only replaced.
    """

    def __init__(self, members=()):
        self._members: list[Individual] = []
        self._F: np.ndarray | None = None
        self._key = None
        self._g: list[float] = []
        for ind in members:
            self.append(ind)

    def __len__(self):
        return len(self._members)

    def __iter__(self):
        return iter(self._members)

    def __getitem__(self, k):
        return self._members[k]

    def __repr__(self):
        return f"Archive({self._members!r})"

    @property
    def objectives(self) -> np.ndarray:
        k = len(self._members)
        return np.empty((0, 0)) if self._F is None else self._F[:k]

    def scores(self, weight, z, scalarize) -> list[float]:
        key = (id(weight), id(z), scalarize)
        if key != self._key or len(self._g) != len(self._members):
            self._g = scalarize(self.objectives, weight, z).tolist() if self._members else []
            self._key = key
            # keep the keyed arrays alive so their ids cannot be reused
            self._refs = (weight, z)
        return self._g

    def append(self, ind: Individual, score: float | None = None) -> None:
        f = ind.evaluation.objectives
        k = len(self._members)
        if self._F is None:
            self._F = np.empty((8, f.size))
        elif k == len(self._F):
            self._F = np.vstack([self._F, np.empty_like(self._F)])
        self._F[k] = f
        self._members.append(ind)
        if score is not None and len(self._g) == k:
            self._g.append(score)
        else:
            self._key = None

    def pop(self, k: int = -1) -> Individual:
        n = len(self._members)
        k = k % n
        self._F[k : n - 1] = self._F[k + 1 : n]
        if len(self._g) == n:
            self._g.pop(k)
        else:
            self._key = None
        return self._members.pop(k)


@dataclass(eq=False)
class Subproblem:
    """One weight vector with its neighbourhood, incumbent and infeasible archive."""

    index: int
    weight: np.ndarray
    neighborhood: np.ndarray
    incumbent: Individual
    capacity: int = 10
    archive: Archive = field(default_factory=Archive)
    # rows of the neighbours' weight vectors, filled lazily by the update rules
    neighbor_weights: np.ndarray | None = None


@dataclass(frozen=True, eq=False)
class Problem:
    """A bounded constrained problem, minimization in every objective.

    ``function`` maps a design vector to ``(objectives, constraint_values)``
    with constraints in the ``h_k(x) <= 0`` feasible convention.
    """

    name: str
    n: int
    m: int
    p: int
    lower: np.ndarray
    upper: np.ndarray
    function: Callable[[np.ndarray], tuple]
    hv_reference: np.ndarray
    description: str = ""

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        ref = np.asarray(self.hv_reference, dtype=float)
        if lower.shape != (self.n,) or upper.shape != (self.n,):
            raise ConfigurationError(f"{self.name}: bounds must have length n={self.n}")
        if not np.all(lower < upper):
            raise ConfigurationError(f"{self.name}: every lower bound must be below its upper bound")
        if ref.shape != (self.m,):
            raise ConfigurationError(f"{self.name}: hv_reference must have length m={self.m}")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "hv_reference", ref)

    def check(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise DimensionError(f"{self.name}: expected a design vector of length {self.n}, got shape {x.shape}")
        if not ((x >= self.lower).all() and (x <= self.upper).all()):
            raise BoundsError(f"{self.name}: design vector outside bounds: {x.tolist()}")
        return x

    def evaluate(self, x) -> Evaluation:
        x = self.check(x)
        f, h = self.function(x)
        return make_evaluation(f, h, self.m, self.p)


class Algorithm(str, enum.Enum):
    CMOEAD = "cmoead"
    CMOEAD_DMA = "cmoead-dma"
    CMOEAD_DMA_LM = "cmoead-dma-lm"

    @classmethod
    def parse(cls, name: str | Algorithm) -> Algorithm:
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("_", "-").replace("/", "")
        for alg in cls:
            if alg.value == key:
                return alg
        valid = ", ".join(a.value for a in cls)
        raise ConfigurationError(f"unknown algorithm {name!r}; valid values: {valid}")


DM_POOLS = ("archive+neighborhood", "archive")
HYBRID_MODES = ("bernoulli", "partition")
SCALARIZERS = ("tchebycheff", "weighted_sum")


@dataclass(frozen=True)
class RunConfig:
    """Run parameters. Defaults reproduce the published setup where one exists.

    ``mutation_rate=None`` means ``1/n`` for the problem being solved.
    """

    algorithm: Algorithm = Algorithm.CMOEAD_DMA_LM
    population: int = 100
    generations: int = 1000
    neighborhood: int = 20
    dm_rate: float = 0.5
    archive_capacity: int = 10
    sbx_rate: float = 0.9
    sbx_eta: float = 20.0
    mutation_rate: float | None = None
    mutation_eta: float = 20.0
    seed: int = 0
    dm_pool: str = "archive+neighborhood"
    hybrid_mode: str = "bernoulli"
    scalarizer: str = "tchebycheff"

    def __post_init__(self):
        object.__setattr__(self, "algorithm", Algorithm.parse(self.algorithm))
        if self.population < 2:
            raise ConfigurationError("population must be at least 2")
        if self.generations < 0:
            raise ConfigurationError("generations must be non-negative")
        if not 1 <= self.neighborhood <= self.population:
            raise ConfigurationError("neighborhood size T must satisfy 1 <= T <= N")
        for name in ("dm_rate", "sbx_rate"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ConfigurationError(f"{name} must lie in [0, 1]")
        if self.mutation_rate is not None and not 0.0 <= self.mutation_rate <= 1.0:
            raise ConfigurationError("mutation_rate must lie in [0, 1]")
        if self.sbx_eta <= 0 or self.mutation_eta <= 0:
            raise ConfigurationError("distribution indices must be positive")
        if self.archive_capacity < 1:
            raise ConfigurationError("archive capacity must be positive")
        if self.seed < 0:
            raise ConfigurationError("seed must be unsigned")
        if self.dm_pool not in DM_POOLS:
            raise ConfigurationError(f"dm_pool must be one of {DM_POOLS}")
        if self.hybrid_mode not in HYBRID_MODES:
            raise ConfigurationError(f"hybrid_mode must be one of {HYBRID_MODES}")
        if self.scalarizer not in SCALARIZERS:
            raise ConfigurationError(f"scalarizer must be one of {SCALARIZERS}")

    def pm_for(self, problem: Problem) -> float:
        return 1.0 / problem.n if self.mutation_rate is None else self.mutation_rate
