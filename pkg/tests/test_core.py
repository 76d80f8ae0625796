import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmoead.core import (
    Algorithm,
    Archive,
    BoundsError,
    ConfigurationError,
    DimensionError,
    Problem,
    RunConfig,
    make_evaluation,
)
from cmoead.problems import get_problem

from conftest import ind


def test_all_constraints_satisfied():
    ev = make_evaluation([0.0, 1.0], [-1.0, -2.0])
    assert ev.violations.tolist() == [0.0, 0.0]
    assert ev.violation_sum == 0.0
    assert ev.feasible


def test_violation_is_positive_part():
    ev = make_evaluation([0.0], [1.0, -1.0])
    assert ev.violations.tolist() == [1.0, 0.0]
    assert ev.violation_sum == 1.0
    assert not ev.feasible


def test_violation_sum_of_positives():
    ev = make_evaluation([0.0], [0.5, 0.25])
    assert ev.violations.tolist() == [0.5, 0.25]
    assert ev.violation_sum == 0.75


def test_boundary_counts_as_feasible():
    assert make_evaluation([0.0], [0.0, -3.0]).feasible


def test_dimension_checks():
    with pytest.raises(DimensionError):
        make_evaluation([1.0, 2.0], [0.0], m=3)
    with pytest.raises(DimensionError):
        make_evaluation([1.0, 2.0], [0.0], p=2)
    with pytest.raises(DimensionError):
        make_evaluation([], [0.0])


finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)


@given(st.lists(finite, min_size=1, max_size=4), st.lists(finite, min_size=0, max_size=6))
def test_evaluation_invariants(f, h):
    ev = make_evaluation(f, h)
    assert np.array_equal(ev.violations, np.maximum(np.array(h, dtype=float), 0.0))
    assert abs(ev.violation_sum - ev.violations.sum()) <= 1e-12
    assert (ev.violation_sum == 0.0) == bool(np.all(ev.violations == 0.0))


def test_problem_rejects_out_of_bounds_without_evaluating():
    calls = []

    def f(x):
        calls.append(x)
        return (x[0], x[1]), ()

    prob = Problem("t", 2, 2, 0, np.zeros(2), np.ones(2), f, np.ones(2))
    with pytest.raises(BoundsError):
        prob.evaluate([1.5, 0.5])
    with pytest.raises(BoundsError):
        prob.evaluate([np.nan, 0.5])
    with pytest.raises(DimensionError):
        prob.evaluate([0.5])
    assert calls == []


def test_problem_bounds_validated():
    with pytest.raises(ConfigurationError):
        Problem("bad", 1, 1, 0, np.ones(1), np.ones(1), lambda x: ((0.0,), ()), np.ones(1))


def test_evaluation_is_idempotent():
    prob = get_problem("osy")
    x = (prob.lower + prob.upper) / 2
    assert prob.evaluate(x) == prob.evaluate(x.copy())


def test_run_config_defaults():
    cfg = RunConfig()
    assert (cfg.population, cfg.generations, cfg.dm_rate, cfg.sbx_rate, cfg.sbx_eta) == (100, 1000, 0.5, 0.9, 20.0)
    assert cfg.pm_for(get_problem("osy")) == pytest.approx(1 / 6)
    assert cfg.pm_for(get_problem("tnk")) == pytest.approx(1 / 2)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"population": 1},
        {"neighborhood": 101},
        {"dm_rate": 1.5},
        {"sbx_rate": -0.1},
        {"mutation_rate": 2.0},
        {"sbx_eta": 0.0},
        {"archive_capacity": 0},
        {"algorithm": "nsga2"},
        {"dm_pool": "everything"},
        {"hybrid_mode": "alternate"},
    ],
)
def test_run_config_rejects(kwargs):
    with pytest.raises(ConfigurationError):
        RunConfig(**kwargs)


def test_algorithm_parse_accepts_spellings():
    assert Algorithm.parse("CMOEAD_DMA_LM") is Algorithm.CMOEAD_DMA_LM
    assert Algorithm.parse(" CMOEAD-DMA ") is Algorithm.CMOEAD_DMA
    with pytest.raises(ConfigurationError, match="cmoead-dma-lm"):
        Algorithm.parse("dm")


def test_archive_keeps_objectives_in_step():
    a = Archive()
    members = [ind([float(k), -float(k)], [1.0]) for k in range(20)]
    for m in members:
        a.append(m)
    a.pop(3)
    a.pop(0)
    a.pop(-1)
    kept = [m for k, m in enumerate(members) if k not in (0, 3, 19)]
    assert list(a) == kept
    assert np.array_equal(a.objectives, np.array([m.objectives for m in kept]))
