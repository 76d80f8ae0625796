import sys
import textwrap

import numpy as np
import pytest

from cmoead.core import ConfigurationError, EvaluationError, ProtocolError
from cmoead.external import ExternalEvaluator, external_problem, hre_spec_text, parse_spec
from cmoead.problems import get_problem

TNK_EVALUATOR = """
import math, sys
x1, x2 = (float(t) for t in sys.stdin.readline().split())
print(x1, x2)
print(-(x1**2 + x2**2 - 1 - 0.1*math.cos(16*math.atan2(x1, x2))), (x1-0.5)**2 + (x2-0.5)**2 - 0.5)
"""


def write(path, text):
    path.write_text(textwrap.dedent(text))
    return path


def spec_for(tmp_path, body, **overrides):
    script = write(tmp_path / "eval.py", body)
    keys = {
        "name": "ext",
        "n": "2",
        "m": "2",
        "p": "2",
        "lower": "0 0",
        "upper": "3.141592653589793, 3.141592653589793",
        "hv_reference": "1.2 1.2",
        "command": f"{sys.executable} {script}",
        "timeout_seconds": "10",
    }
    keys.update(overrides)
    return write(tmp_path / "p.spec", "\n".join(f"{k} = {v}" for k, v in keys.items()) + "\n# done\n")


def test_external_matches_builtin(tmp_path):
    prob = external_problem(spec_for(tmp_path, TNK_EVALUATOR))
    ref = get_problem("tnk")
    for x in ([0.3, 1.2], [1.0, 1.0], [2.5, 0.1]):
        got, want = prob.evaluate(x), ref.evaluate(x)
        assert np.allclose(got.objectives, want.objectives, rtol=0, atol=1e-12)
        assert np.allclose(got.constraint_values, want.constraint_values, rtol=0, atol=1e-12)


def test_external_cache_avoids_repeat_calls(tmp_path):
    prob = external_problem(spec_for(tmp_path, TNK_EVALUATOR))
    prob.evaluate([0.5, 0.5])
    prob.evaluate([0.5, 0.5])
    assert prob.function.calls == 1


def test_prefetch_fills_cache(tmp_path):
    prob = external_problem(spec_for(tmp_path, TNK_EVALUATOR, max_workers="3"))
    X = np.random.default_rng(0).random((5, 2))
    prob.function.prefetch(X)
    assert prob.function.calls == 5
    for x in X:
        prob.evaluate(x)
    assert prob.function.calls == 5


def test_maximize_negates_once(tmp_path):
    prob = external_problem(spec_for(tmp_path, TNK_EVALUATOR, maximize="0"))
    assert prob.evaluate([0.25, 0.75]).objectives.tolist() == [-0.25, 0.75]


def test_nonzero_exit(tmp_path):
    prob = external_problem(spec_for(tmp_path, "import sys\nsys.stderr.write('boom')\nsys.exit(3)\n"))
    with pytest.raises(EvaluationError, match="status 3.*boom") as info:
        prob.evaluate([0.5, 0.5])
    assert info.value.x.tolist() == [0.5, 0.5]


def test_timeout(tmp_path):
    prob = external_problem(spec_for(tmp_path, "import time\ntime.sleep(5)\n", timeout_seconds="0.3"))
    with pytest.raises(EvaluationError, match="timed out"):
        prob.evaluate([0.5, 0.5])


@pytest.mark.parametrize(
    "body",
    [
        "print('1 2')\n",
        "print('1 2 3')\nprint('0 0')\n",
        "print('a b')\nprint('0 0')\n",
    ],
)
def test_protocol_errors(tmp_path, body):
    prob = external_problem(spec_for(tmp_path, body))
    with pytest.raises(ProtocolError):
        prob.evaluate([0.5, 0.5])


def test_missing_program(tmp_path):
    spec = spec_for(tmp_path, TNK_EVALUATOR, command="/nonexistent/evaluator")
    with pytest.raises(EvaluationError, match="cannot start"):
        external_problem(spec).evaluate([0.5, 0.5])


def test_spec_validation(tmp_path):
    with pytest.raises(ConfigurationError, match="missing keys"):
        parse_spec("name = x\n")
    with pytest.raises(ConfigurationError, match="lower"):
        external_problem(spec_for(tmp_path, TNK_EVALUATOR, lower="0"))
    with pytest.raises(ConfigurationError):
        external_problem(spec_for(tmp_path, TNK_EVALUATOR, maximize="2"))
    with pytest.raises(ConfigurationError):
        external_problem(tmp_path / "absent.spec")


def test_colon_syntax_and_comments():
    text = "\n".join(f"{k}: 1  # note" for k in ("name", "n", "m", "p", "lower", "upper", "hv_reference", "command"))
    spec = parse_spec(text + "\ntimeout_seconds: 1\n")
    assert spec["n"] == "1"


def test_hre_spec_round_trip(tmp_path):
    path = tmp_path / "hre.spec"
    path.write_text(hre_spec_text("my-rocket-sim --fast", 120))
    prob = external_problem(path)
    assert (prob.name, prob.n, prob.m, prob.p) == ("hre", 6, 2, 3)
    assert prob.lower.tolist() == [1.0, 1.0, 10.0, 15.0, 3.0, 5.0]
    assert prob.hv_reference.tolist() == [2000.0, 0.0]
    assert prob.function.command == ["my-rocket-sim", "--fast"]
    assert prob.function.sign.tolist() == [-1.0, 1.0]
