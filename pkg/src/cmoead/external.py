"""Problems evaluated by an external black-box program.

Spec file: plain ``key = value`` lines (``#`` starts a comment) with keys
``name, n, m, p, lower, upper, hv_reference, command, timeout_seconds`` and
the optional ``maximize`` (0-based objective indices to negate) and
``max_workers``. Array values are whitespace or comma separated.

Protocol, one evaluation per process: the design vector is written to stdin
as one line of ``n`` numbers; the program prints one line of ``m`` objective
values then one line of ``p`` constraint values (``<= 0`` feasible) and
exits 0.
"""

from __future__ import annotations

import shlex
import subprocess
import threading
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .core import ConfigurationError, EvaluationError, Problem, ProtocolError
from .problems import HRE

REQUIRED_KEYS = ("name", "n", "m", "p", "lower", "upper", "hv_reference", "command", "timeout_seconds")


def parse_spec(text: str) -> dict[str, str]:
    spec = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line:
            key, value = line.split("=", 1)
        elif ":" in line:
            key, value = line.split(":", 1)
        else:
            raise ConfigurationError(f"spec line {lineno}: expected 'key = value', got {raw!r}")
        spec[key.strip().lower()] = value.strip()
    missing = [k for k in REQUIRED_KEYS if k not in spec]
    if missing:
        raise ConfigurationError(f"problem spec is missing keys: {', '.join(missing)}")
    return spec


def _floats(value: str, count: int, key: str) -> np.ndarray:
    try:
        arr = np.array([float(t) for t in value.replace(",", " ").split()])
    except ValueError as exc:
        raise ConfigurationError(f"{key}: {exc}") from None
    if arr.size != count:
        raise ConfigurationError(f"{key}: expected {count} values, got {arr.size}")
    return arr


def format_vector(x) -> str:
    return " ".join(repr(float(v)) for v in x)


class ExternalEvaluator:
    """Callable running the evaluator program once per uncached design vector."""

    def __init__(self, command: list[str], n: int, m: int, p: int, timeout: float, maximize=(), max_workers: int = 1):
        self.command = command
        self.n, self.m, self.p = n, m, p
        self.timeout = timeout
        self.sign = np.ones(m)
        self.sign[list(maximize)] = -1.0
        self.max_workers = max(1, int(max_workers))
        self.calls = 0
        self._cache: dict[bytes, tuple[np.ndarray, np.ndarray]] = {}
        self._lock = threading.Lock()

    def _run(self, x: np.ndarray):
        try:
            proc = subprocess.run(
                self.command,
                input=format_vector(x) + "\n",
                capture_output=True,
                text=True,
                timeout=self.timeout,
            )
        except subprocess.TimeoutExpired:
            raise EvaluationError(f"evaluator timed out after {self.timeout}s for x={x.tolist()}", x) from None
        except OSError as exc:
            raise EvaluationError(f"cannot start evaluator {self.command!r}: {exc}", x) from None
        if proc.returncode != 0:
            raise EvaluationError(
                f"evaluator exited with status {proc.returncode} for x={x.tolist()}: {proc.stderr.strip()}", x
            )
        lines = [ln for ln in proc.stdout.splitlines() if ln.strip()]
        expected = 2 if self.p else 1
        if len(lines) < expected:
            raise ProtocolError(f"evaluator printed {len(lines)} lines, expected {expected} for x={x.tolist()}", x)
        try:
            f = np.array([float(t) for t in lines[0].split()])
            h = np.array([float(t) for t in lines[1].split()]) if self.p else np.zeros(0)
        except ValueError:
            raise ProtocolError(f"malformed evaluator reply {proc.stdout!r} for x={x.tolist()}", x) from None
        if f.size != self.m or h.size != self.p:
            raise ProtocolError(
                f"evaluator returned {f.size} objectives and {h.size} constraints, "
                f"expected {self.m} and {self.p} for x={x.tolist()}",
                x,
            )
        return f * self.sign, h

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        key = x.tobytes()
        with self._lock:
            hit = self._cache.get(key)
        if hit is not None:
            return hit
        result = self._run(x)
        with self._lock:
            self.calls += 1
            self._cache[key] = result
        return result

    def prefetch(self, X) -> None:
        """Evaluate several vectors concurrently, filling the cache."""
        with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
            list(pool.map(self, [np.asarray(x, dtype=float) for x in X]))


def external_problem(spec_path) -> Problem:
    path = Path(spec_path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read problem spec {path}: {exc}") from None
    spec = parse_spec(text)
    try:
        n, m, p = int(spec["n"]), int(spec["m"]), int(spec["p"])
        timeout = float(spec["timeout_seconds"])
        maximize = [int(t) for t in spec.get("maximize", "").replace(",", " ").split()]
        max_workers = int(spec.get("max_workers", "1"))
    except ValueError as exc:
        raise ConfigurationError(f"problem spec {path}: {exc}") from None
    if min(n, m) < 1 or p < 0:
        raise ConfigurationError("problem spec needs n >= 1, m >= 1, p >= 0")
    if any(not 0 <= k < m for k in maximize):
        raise ConfigurationError("maximize indices must lie in [0, m)")
    command = shlex.split(spec["command"])
    if not command:
        raise ConfigurationError("problem spec has an empty command")
    evaluator = ExternalEvaluator(command, n, m, p, timeout, maximize, max_workers)
    return Problem(
        name=spec["name"],
        n=n,
        m=m,
        p=p,
        lower=_floats(spec["lower"], n, "lower"),
        upper=_floats(spec["upper"], n, "upper"),
        function=evaluator,
        hv_reference=_floats(spec["hv_reference"], m, "hv_reference"),
        description=f"external evaluator: {spec['command']}",
    )


def hre_spec_text(command: str, timeout_seconds: float = 600.0) -> str:
    """Spec file for the hybrid-rocket launch vehicle problem driven by ``command``.

    The evaluator reports altitude and mass as computed; altitude is negated
    here (``maximize = 0``), once, so the optimizer minimizes ``-H``.
    """
    lines = [
        "# hybrid rocket engine launch vehicle",
        "# variables: " + ", ".join(f"{v.name} [{v.unit}]" for v in HRE.variables),
        "# constraints: " + ", ".join(f"{c} - {lim} <= 0" for c, lim, _ in HRE.constraints),
        "name = hre",
        "n = 6",
        "m = 2",
        "p = 3",
        "lower = " + format_vector(HRE.lower),
        "upper = " + format_vector(HRE.upper),
        "hv_reference = " + format_vector(HRE.hv_reference),
        "maximize = 0",
        f"command = {command}",
        f"timeout_seconds = {timeout_seconds}",
    ]
    return "\n".join(lines) + "\n"
