import sys

import numpy as np
import pytest

from cmoead.core import Algorithm, Problem, RunConfig
from cmoead.external import external_problem
from cmoead.harness import (
    HISTORY_HEADER,
    compare,
    derive_seeds,
    initial_population,
    read_csv,
    run,
    run_experiment,
)
from cmoead.metrics import hypervolume_2d, nondominated_filter
from cmoead.problems import get_problem

SMALL = dict(population=10, generations=6, neighborhood=3)


@pytest.mark.parametrize("alg", list(Algorithm))
def test_budget_and_lengths(alg):
    cfg = RunConfig(algorithm=alg, seed=3, **SMALL)
    h = run(get_problem("tnk"), cfg)
    assert h.evaluations == 10 * 7
    assert len(h.per_generation_hv) == len(h.cumulative_hv) == len(h.feasible_count) == 6


def test_zero_generations_only_initial_population():
    h = run(get_problem("osy"), RunConfig(population=10, generations=0, neighborhood=3))
    assert h.evaluations == 10 and len(h) == 0


@pytest.mark.parametrize("alg", list(Algorithm))
def test_deterministic(alg):
    cfg = RunConfig(algorithm=alg, seed=11, **SMALL)
    assert run(get_problem("wb"), cfg).identical(run(get_problem("wb"), cfg))


def test_different_seeds_differ():
    a = run(get_problem("tnk"), RunConfig(seed=1, **SMALL))
    b = run(get_problem("tnk"), RunConfig(seed=2, **SMALL))
    assert a.initial_digest != b.initial_digest


def test_initial_population_shared_across_algorithms():
    prob = get_problem("osy")
    X = [initial_population(prob, RunConfig(algorithm=a, seed=5, **SMALL)) for a in Algorithm]
    assert all(np.array_equal(X[0], x) for x in X[1:])
    digests = {run(prob, RunConfig(algorithm=a, seed=5, **SMALL)).initial_digest for a in Algorithm}
    assert len(digests) == 1


def test_cumulative_hv_is_monotone_and_matches_front():
    prob = get_problem("tnk")
    h = run(prob, RunConfig(seed=4, population=20, generations=15, neighborhood=5))
    assert np.all(np.diff(h.cumulative_hv) >= 0)
    assert np.all(h.cumulative_hv >= h.per_generation_hv - 1e-12)
    assert h.cumulative_hv[-1] == pytest.approx(hypervolume_2d(h.front_objectives, prob.hv_reference))
    assert len(nondominated_filter(h.front_objectives)) == len(h.front_objectives)
    for f, x in zip(h.front_objectives, h.front_x):
        ev = prob.evaluate(x)
        assert ev.feasible and np.array_equal(ev.objectives, f)


def test_dm_success_only_counted_for_directed_mating():
    h = run(get_problem("tnk"), RunConfig(algorithm="cmoead", seed=2, **SMALL))
    assert h.dm_success_count.sum() == 0
    h = run(get_problem("tnk"), RunConfig(algorithm="cmoead-dma", seed=2, population=20, generations=20, neighborhood=5))
    assert h.dm_success_count.max() > 0


def test_partition_mode_runs_and_is_deterministic():
    cfg = RunConfig(seed=8, hybrid_mode="partition", **SMALL)
    assert run(get_problem("tnk"), cfg).identical(run(get_problem("tnk"), cfg))


def test_unconstrained_problem():
    prob = Problem(
        "sphere2", 2, 2, 0, np.zeros(2), np.ones(2), lambda x: ((x[0], 1 - x[0] + x[1]), ()), np.array([1.1, 1.1])
    )
    h = run(prob, RunConfig(**SMALL))
    assert np.all(h.feasible_count == 10)


def test_derive_seeds():
    assert derive_seeds(0, 5) == derive_seeds(0, 5)
    assert derive_seeds(0, 5)[:3] == derive_seeds(0, 3)
    assert len(set(derive_seeds(1, 100))) == 100


def test_experiment_writes_csvs(tmp_path):
    rep = run_experiment(get_problem("tnk"), RunConfig(**SMALL), [1, 2], tmp_path)
    header, rows = read_csv(tmp_path / "history_tnk_cmoead-dma-lm_1.csv")
    assert tuple(header) == HISTORY_HEADER
    assert rows.shape == (6, 5)
    assert rows[:, 2].tolist() == rep.histories[1].cumulative_hv.tolist()
    header, rows = read_csv(tmp_path / "summary_tnk_cmoead-dma-lm.csv")
    assert rows[:, 1] == pytest.approx(np.mean([rep.histories[s].cumulative_hv for s in (1, 2)], axis=0))
    header, rows = read_csv(tmp_path / "front_tnk_cmoead-dma-lm_2.csv")
    assert header == ["f1", "f2", "x1", "x2"]


def test_single_seed_warns_but_succeeds():
    rep = run_experiment(get_problem("tnk"), RunConfig(**SMALL), [1])
    assert rep.single_run_warning
    assert rep.cumulative.std.tolist() == [0.0] * 6


def test_seed_list_validation():
    with pytest.raises(ValueError):
        run_experiment(get_problem("tnk"), RunConfig(**SMALL), [])
    with pytest.raises(ValueError):
        run_experiment(get_problem("tnk"), RunConfig(**SMALL), [1, 1])


def test_failing_seed_is_recorded_and_others_continue(tmp_path):
    # the evaluator fails only when x1 lands above 0.9, which some seeds hit in the initial sample
    script = tmp_path / "flaky.py"
    script.write_text(
        "import sys\n"
        "x = [float(t) for t in sys.stdin.readline().split()]\n"
        "if x[0] > 0.9: sys.exit(4)\n"
        "print(x[0], 1 - x[0] + x[1])\nprint(0)\n"
    )
    spec = tmp_path / "p.spec"
    spec.write_text(
        f"name = flaky\nn = 2\nm = 2\np = 1\nlower = 0 0\nupper = 1 1\nhv_reference = 1.1 1.1\n"
        f"command = {sys.executable} {script}\ntimeout_seconds = 10\n"
    )
    prob = external_problem(spec)
    cfg = RunConfig(population=4, generations=0, neighborhood=2)
    seeds = list(range(12))
    outcomes = {s: bool((initial_population(prob, RunConfig(seed=s, population=4, generations=0, neighborhood=2))[:, 0] > 0.9).any()) for s in seeds}
    assert any(outcomes.values()) and not all(outcomes.values())
    rep = run_experiment(prob, cfg, seeds, tmp_path / "out")
    assert set(rep.failures) == {s for s, bad in outcomes.items() if bad}
    assert set(rep.histories) == {s for s, bad in outcomes.items() if not bad}
    assert all("initial population" in msg for msg in rep.failures.values())
    assert (tmp_path / "out" / "failures_flaky_cmoead-dma-lm.txt").exists()


def test_compare_shares_seeds():
    cmp = compare(get_problem("tnk"), RunConfig(**SMALL), [1, 2, 3])
    assert set(cmp.reports) == set(Algorithm)
    assert all(rep.seeds == [1, 2, 3] for rep in cmp.reports.values())
    assert 0.0 <= cmp.wilcoxon_greater(Algorithm.CMOEAD_DMA_LM, Algorithm.CMOEAD) <= 1.0
    assert "wilcoxon" in cmp.table()


def test_parallel_matches_serial():
    seeds = [4, 5]
    a = run_experiment(get_problem("tnk"), RunConfig(**SMALL), seeds, n_jobs=1)
    b = run_experiment(get_problem("tnk"), RunConfig(**SMALL), seeds, n_jobs=2)
    assert all(a.histories[s].identical(b.histories[s]) for s in seeds)
