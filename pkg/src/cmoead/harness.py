"""Generational driver, multi-seed experiments and CSV output."""

from __future__ import annotations

import csv
import hashlib
import logging
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
from scipy import stats

from .core import Algorithm, EvaluationError, Individual, Problem, RunConfig, Subproblem
from .decomposition import SCALARIZERS, build_neighborhoods, generate_weights, initial_reference_point
from .mating import partition_dm, select_dm, select_hybrid, select_neighborhood
from .metrics import FeasibleFront, RunStatistics, aggregate_runs, hypervolume_2d
from .update import update_cmoead, update_dma, update_lm
from .variation import polynomial_mutation, sbx_crossover

log = logging.getLogger(__name__)

HISTORY_HEADER = ("generation", "population_hv", "cumulative_hv", "feasible_count", "dm_success")
SUMMARY_HEADER = ("generation", "mean_hv", "std_hv")


@dataclass(eq=False)
class HvHistory:
    seed: int
    per_generation_hv: np.ndarray
    cumulative_hv: np.ndarray
    feasible_count: np.ndarray
    dm_success_count: np.ndarray
    evaluations: int = 0
    initial_digest: str = ""
    front_objectives: np.ndarray = field(default_factory=lambda: np.empty((0, 0)))
    front_x: np.ndarray = field(default_factory=lambda: np.empty((0, 0)))

    def __len__(self):
        return len(self.cumulative_hv)

    def identical(self, other: HvHistory) -> bool:
        """Bit-for-bit equality of every recorded series and the final front."""
        return (
            self.seed == other.seed
            and self.evaluations == other.evaluations
            and self.initial_digest == other.initial_digest
            and all(
                np.array_equal(getattr(self, k), getattr(other, k))
                for k in (
                    "per_generation_hv",
                    "cumulative_hv",
                    "feasible_count",
                    "dm_success_count",
                    "front_objectives",
                    "front_x",
                )
            )
        )


def derive_seeds(master: int, count: int) -> list[int]:
    """Reproducible, distinct run seeds split from one master seed."""
    children = np.random.SeedSequence(master).spawn(count)
    seeds = [int(c.generate_state(1, dtype=np.uint32)[0]) for c in children]
    if len(set(seeds)) != len(seeds):
        raise RuntimeError("seed collision; choose another master seed")
    return seeds


def _streams(config: RunConfig):
    init_ss, evo_ss, plan_ss = np.random.SeedSequence(config.seed).spawn(3)
    return (
        np.random.default_rng(init_ss),
        [np.random.default_rng(s) for s in evo_ss.spawn(config.population)],
        np.random.default_rng(plan_ss),
    )


def initial_population(problem: Problem, config: RunConfig) -> np.ndarray:
    """Uniform samples within bounds; depends only on the seed, never on the algorithm."""
    rng, _, _ = _streams(config)
    return _sample(problem, rng, config.population)


def _sample(problem: Problem, rng, count: int) -> np.ndarray:
    return problem.lower + rng.random((count, problem.n)) * (problem.upper - problem.lower)


class _CountingEvaluator:
    def __init__(self, problem: Problem):
        self.problem = problem
        self.count = 0
        self.generation = -1

    def __call__(self, x) -> Individual:
        self.count += 1
        try:
            ev = self.problem.evaluate(x)
        except EvaluationError as exc:
            where = "initial population" if self.generation < 0 else f"generation {self.generation}"
            raise EvaluationError(f"{where}: {exc}", x) from exc
        return Individual(np.asarray(x, dtype=float), ev)


def _digest(pop: list[Individual]) -> str:
    h = hashlib.sha256()
    for ind in pop:
        h.update(ind.x.tobytes())
        h.update(ind.evaluation.objectives.tobytes())
        h.update(ind.evaluation.constraint_values.tobytes())
    return h.hexdigest()


def run(problem: Problem, config: RunConfig) -> HvHistory:
    """Run one optimization and record per-generation hypervolume statistics."""
    N, G = config.population, config.generations
    scalarize = SCALARIZERS[config.scalarizer]
    pm = config.pm_for(problem)
    lower, upper = problem.lower, problem.upper
    alg = config.algorithm

    init_rng, rngs, plan_rng = _streams(config)
    evaluate = _CountingEvaluator(problem)
    X0 = _sample(problem, init_rng, N)
    if hasattr(problem.function, "prefetch"):
        try:
            problem.function.prefetch(X0)
        except EvaluationError as exc:
            raise EvaluationError(f"initial population: {exc}", exc.x) from exc
    pop = [evaluate(x) for x in X0]

    weights = generate_weights(N, problem.m)
    hoods = build_neighborhoods(weights, config.neighborhood)
    subproblems = [
        Subproblem(i, weights[i], hoods[i], pop[i], config.archive_capacity) for i in range(N)
    ]
    z = initial_reference_point(problem.m)
    front = FeasibleFront(problem.m, problem.n)
    for ind in pop:
        z = np.minimum(z, ind.evaluation.objectives)
        if ind.feasible:
            front.add(ind.evaluation.objectives, ind.x)

    ref = problem.hv_reference
    use_hv = problem.m == 2
    pop_hv = np.zeros(G)
    cum_hv = np.zeros(G)
    feas_count = np.zeros(G, dtype=int)
    dm_count = np.zeros(G, dtype=int)

    for gen in range(G):
        evaluate.generation = gen
        plan = None
        if alg is Algorithm.CMOEAD_DMA_LM and config.hybrid_mode == "partition":
            plan = partition_dm(N, config.dm_rate, plan_rng)
        successes = 0
        for i in range(N):
            rng = rngs[i]
            if alg is Algorithm.CMOEAD:
                pair = select_neighborhood(i, subproblems, rng)
            elif alg is Algorithm.CMOEAD_DMA:
                pair = select_dm(i, subproblems, rng, z, config.dm_pool, scalarize)
            else:
                pair = select_hybrid(
                    i, subproblems, config.dm_rate, rng, z, config.dm_pool, scalarize,
                    use_dm=None if plan is None else bool(plan[i]),
                )
            c1, _ = sbx_crossover(pair.parent_a.x, pair.parent_b.x, config.sbx_rate, config.sbx_eta, lower, upper, rng)
            y = evaluate(polynomial_mutation(c1, pm, config.mutation_eta, lower, upper, rng))
            if (y.evaluation.objectives < z).any():
                z = np.minimum(z, y.evaluation.objectives)
            if y.feasible:
                front.add(y.evaluation.objectives, y.x)
            if alg is Algorithm.CMOEAD:
                update_cmoead(subproblems, y, i, z, scalarize)
            elif pair.used_dm:
                update_dma(subproblems, y, i, z, scalarize=scalarize)
            else:
                update_lm(subproblems, y, i, z, scalarize)
            successes += pair.dominated_found

        feasible = [sp.incumbent.evaluation.objectives for sp in subproblems if sp.incumbent.feasible]
        feas_count[gen] = len(feasible)
        dm_count[gen] = successes
        if use_hv:
            pop_hv[gen] = hypervolume_2d(np.array(feasible).reshape(-1, 2), ref)
            cum_hv[gen] = hypervolume_2d(front.F, ref)

    return HvHistory(
        seed=config.seed,
        per_generation_hv=pop_hv,
        cumulative_hv=cum_hv,
        feasible_count=feas_count,
        dm_success_count=dm_count,
        evaluations=evaluate.count,
        initial_digest=_digest(pop),
        front_objectives=front.F,
        front_x=front.X,
    )


def _fmt(v) -> str:
    return repr(float(v)) if isinstance(v, (float, np.floating)) else str(v)


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def write_history(path, h: HvHistory) -> None:
    rows = zip(
        range(len(h)),
        h.per_generation_hv.astype(float),
        h.cumulative_hv.astype(float),
        h.feasible_count.tolist(),
        h.dm_success_count.tolist(),
    )
    _write_csv(Path(path), HISTORY_HEADER, rows)


def write_front(path, h: HvHistory) -> None:
    m = h.front_objectives.shape[1] if h.front_objectives.ndim == 2 else 0
    n = h.front_x.shape[1] if h.front_x.ndim == 2 else 0
    header = [f"f{k + 1}" for k in range(m)] + [f"x{k + 1}" for k in range(n)]
    rows = (list(f) + list(x) for f, x in zip(h.front_objectives.astype(float), h.front_x.astype(float)))
    _write_csv(Path(path), header, rows)


def write_summary(path, s: RunStatistics) -> None:
    _write_csv(Path(path), SUMMARY_HEADER, zip(range(len(s.mean)), s.mean.astype(float), s.std.astype(float)))


def read_csv(path) -> tuple[list[str], np.ndarray]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array([[float(v) for v in r] for r in rows[1:]]).reshape(-1, len(rows[0]))


@dataclass
class ExperimentReport:
    problem: str
    algorithm: Algorithm
    seeds: list[int]
    histories: dict[int, HvHistory]
    failures: dict[int, str]
    cumulative: RunStatistics | None
    population: RunStatistics | None

    @property
    def single_run_warning(self) -> bool:
        return self.cumulative is not None and self.cumulative.std_undefined

    def final(self, attr: str = "cumulative_hv") -> np.ndarray:
        """Final-generation values per successful seed, in seed order."""
        series = [getattr(self.histories[s], attr) for s in self.seeds if s in self.histories]
        # a zero-generation run has no final value
        return np.array([v[-1] if len(v) else np.nan for v in series], dtype=float)


def _run_one(args):
    problem, config = args
    try:
        return config.seed, run(problem, config), None
    except EvaluationError as exc:
        return config.seed, None, str(exc)


def run_experiment(
    problem: Problem, config: RunConfig, seeds, out_dir=None, n_jobs: int = 1
) -> ExperimentReport:
    """Run ``config`` once per seed, aggregate the HV histories and optionally write CSVs.

    Failed seeds are recorded in ``failures``; the remaining seeds still run.
    """
    seeds = [int(s) for s in seeds]
    if not seeds:
        raise ValueError("at least one seed is required")
    if len(set(seeds)) != len(seeds):
        raise ValueError("seeds must be distinct")
    jobs = [(problem, replace(config, seed=s)) for s in seeds]
    if n_jobs > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]

    histories, failures = {}, {}
    for seed, hist, err in results:
        if err is None:
            histories[seed] = hist
        else:
            log.error("seed %d failed: %s", seed, err)
            failures[seed] = err

    cumulative = population = None
    if histories:
        ordered = [histories[s] for s in seeds if s in histories]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            cumulative = aggregate_runs([h.cumulative_hv for h in ordered])
            population = aggregate_runs([h.per_generation_hv for h in ordered])
        if cumulative.std_undefined:
            log.warning("%s/%s: one successful run, std reported as zero", problem.name, config.algorithm.value)

    report = ExperimentReport(problem.name, config.algorithm, seeds, histories, failures, cumulative, population)
    if out_dir is not None:
        write_report(report, out_dir)
    return report


def write_report(report: ExperimentReport, out_dir) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    tag = f"{report.problem}_{report.algorithm.value}"
    for seed, h in report.histories.items():
        write_history(out / f"history_{tag}_{seed}.csv", h)
        write_front(out / f"front_{tag}_{seed}.csv", h)
    if report.cumulative is not None:
        write_summary(out / f"summary_{tag}.csv", report.cumulative)
    if report.failures:
        with open(out / f"failures_{tag}.txt", "w") as fh:
            for seed, msg in report.failures.items():
                fh.write(f"{seed}\t{msg}\n")


@dataclass
class Comparison:
    problem: str
    reports: dict[Algorithm, ExperimentReport]

    def final_mean(self, alg: Algorithm) -> float:
        return float(np.mean(self.reports[alg].final()))

    def final_std(self, alg: Algorithm) -> float:
        vals = self.reports[alg].final()
        return float(np.std(vals, ddof=1)) if len(vals) > 1 else 0.0

    def paired_finals(self, better: Algorithm, worse: Algorithm):
        a, b = self.reports[better], self.reports[worse]
        seeds = [s for s in a.seeds if s in a.histories and s in b.histories]
        return (
            np.array([a.histories[s].cumulative_hv[-1] for s in seeds]),
            np.array([b.histories[s].cumulative_hv[-1] for s in seeds]),
        )

    def wilcoxon_greater(self, better: Algorithm, worse: Algorithm) -> float:
        """One-sided signed-rank p-value for ``better`` > ``worse`` over shared seeds."""
        x, y = self.paired_finals(better, worse)
        d = x - y
        if len(d) == 0 or np.all(d == 0):
            return 1.0
        return float(stats.wilcoxon(x, y, alternative="greater").pvalue)

    def table(self) -> str:
        lines = [f"{'algorithm':<16}{'mean final HV':>18}{'std final HV':>18}{'failures':>10}"]
        for alg, rep in self.reports.items():
            lines.append(
                f"{alg.value:<16}{self.final_mean(alg):>18.6g}{self.final_std(alg):>18.6g}{len(rep.failures):>10}"
            )
        if Algorithm.CMOEAD in self.reports and Algorithm.CMOEAD_DMA_LM in self.reports:
            p = self.wilcoxon_greater(Algorithm.CMOEAD_DMA_LM, Algorithm.CMOEAD)
            lines.append(f"wilcoxon one-sided p (cmoead-dma-lm > cmoead): {p:.4g}")
        return "\n".join(lines)


def compare(problem: Problem, config: RunConfig, seeds, out_dir=None, n_jobs: int = 1) -> Comparison:
    """Run all three algorithms over the same seed list."""
    reports = {}
    for alg in Algorithm:
        reports[alg] = run_experiment(problem, replace(config, algorithm=alg), seeds, out_dir, n_jobs)
    return Comparison(problem.name, reports)
