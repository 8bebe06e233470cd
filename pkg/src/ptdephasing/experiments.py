"""Figure scenarios: decoherence curves over time, zeta forms, alpha_s and tau.

All scenarios share A = 1, cutoff = 0.1, T = 300 and delta = 1 unless a
caller overrides them through ``base_env``. Each grid point is an independent
quadrature, so points can be farmed out to worker processes; results keep
grid order either way.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import partial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .decoherence import DecoherenceSeries, lambda_continuum
from .model import ZETA_FORMS, EnvConfig, SystemConfig
from .quadrature import QuadratureConfig

FIG1_CASES = ((1.0, 0.0), (0.5, 0.0), (1.0, 2.0), (0.5, 2.0))
DEFAULT_POINTS = 400


def default_t_max(theta: float) -> float:
    """10 for theta = pi/2, 30 otherwise (longer horizon for the slow crossovers)."""
    return 10.0 if math.isclose(theta, math.pi / 2) else 30.0


def angle_label(theta: float) -> str:
    """Render multiples of pi/n (n <= 12) symbolically, anything else numerically."""
    for n in range(1, 13):
        k = theta * n / math.pi
        if abs(k - round(k)) < 1e-12:
            k = int(round(k))
            if k == 0:
                return "0"
            num = "pi" if k == 1 else f"{k}pi"
            return num if n == 1 else f"{num}/{n}"
    return f"{theta:.17g}"


def time_grid(t_max: float, n_points: int = DEFAULT_POINTS) -> np.ndarray:
    if n_points < 2 or not t_max > 0:
        raise ValueError("time grid needs n_points >= 2 and t_max > 0")
    return np.linspace(0.0, t_max, n_points)


@dataclass(frozen=True)
class Scenario:
    name: str
    sys: SystemConfig
    env: EnvConfig
    time_grid: Tuple[float, ...]
    label: str

    def __post_init__(self):
        grid = tuple(float(t) for t in self.time_grid)
        if not grid or grid[0] != 0.0 or any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("time grid must start at 0 and increase strictly")
        object.__setattr__(self, "time_grid", grid)


@dataclass
class SweepResult:
    """Curves sharing one axis; ``values[i, j]`` is curve i at axis point j."""

    name: str
    axis_name: str
    axis: np.ndarray
    labels: List[str]
    values: np.ndarray
    errors: np.ndarray
    params: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        self.axis = np.asarray(self.axis, dtype=float)
        self.values = np.asarray(self.values, dtype=float).reshape(len(self.labels), len(self.axis))
        self.errors = np.asarray(self.errors, dtype=float).reshape(self.values.shape)
        if np.any(self.values < 0):
            raise ValueError("negative decoherence factor in sweep")

    def curve(self, label: str) -> np.ndarray:
        return self.values[self.labels.index(label)]

    def series(self, label: str) -> DecoherenceSeries:
        i = self.labels.index(label)
        return DecoherenceSeries(self.axis, self.values[i], self.errors[i], label)

    def rows(self):
        for i, label in enumerate(self.labels):
            for x, v, e in zip(self.axis, self.values[i], self.errors[i]):
                yield label, float(x), float(v), float(e)


def _point(job, cfg):
    t, sys, env = job
    res = lambda_continuum(t, sys, env, cfg)
    return res.value, res.abs_error_estimate


def evaluate(jobs: Sequence[Tuple[float, SystemConfig, EnvConfig]], cfg: Optional[QuadratureConfig] = None, workers: int = 1):
    """Evaluate ``(t, sys, env)`` jobs, optionally in a process pool; order is preserved."""
    fn = partial(_point, cfg=cfg)
    if workers <= 1 or len(jobs) < 2:
        return [fn(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def _base_env(base_env: Optional[EnvConfig], **overrides) -> EnvConfig:
    return replace(base_env or EnvConfig(), **overrides)


def _sweep(name, axis_name, axis, labelled_jobs, params, cfg, workers):
    labels = [label for label, _ in labelled_jobs]
    jobs = [job for _, block in labelled_jobs for job in block]
    out = evaluate(jobs, cfg, workers)
    values = np.array([v for v, _ in out])
    errors = np.array([e for _, e in out])
    cfg = cfg or QuadratureConfig()
    axis = np.asarray(axis, dtype=float)
    params = dict(params)
    params[f"{axis_name}_min"] = float(axis[0])
    params[f"{axis_name}_max"] = float(axis[-1])
    params[f"{axis_name}_points"] = len(axis)
    params.update(rel_tol=cfg.rel_tol, abs_tol=cfg.abs_tol)
    return SweepResult(name, axis_name, axis, labels, values, errors, params)


def _env_params(env: EnvConfig):
    return {
        "amp": env.amp,
        "cutoff": env.cutoff,
        "temperature": "0" if env.zero_temperature else env.temperature,
        "delta": env.delta,
    }


def fig1(
    theta: float,
    t_max: Optional[float] = None,
    n_points: int = DEFAULT_POINTS,
    cfg: Optional[QuadratureConfig] = None,
    workers: int = 1,
    base_env: Optional[EnvConfig] = None,
) -> SweepResult:
    """Hermitian / non-Hermitian system and bath in all four combinations."""
    t_max = default_t_max(theta) if t_max is None else t_max
    grid = time_grid(t_max, n_points)
    blocks = []
    for e1, tau in FIG1_CASES:
        sys = SystemConfig.from_e1(e1)
        env = _base_env(base_env, tau=tau, theta=theta, zeta_form="quadratic")
        blocks.append((f"E1={e1:g},tau={tau:g}", [(float(t), sys, env) for t in grid]))
    env = _base_env(base_env)
    params = {"figure": "fig1", "theta": angle_label(theta), "zeta_form": "quadratic"}
    return _sweep("fig1", "t", grid, blocks, {**params, **_env_params(env)}, cfg, workers)


def fig1_scenarios(theta: float, t_max: Optional[float] = None, n_points: int = DEFAULT_POINTS) -> List[Scenario]:
    t_max = default_t_max(theta) if t_max is None else t_max
    grid = tuple(time_grid(t_max, n_points))
    return [
        Scenario("fig1", SystemConfig.from_e1(e1), EnvConfig(tau=tau, theta=theta), grid, f"E1={e1:g},tau={tau:g}")
        for e1, tau in FIG1_CASES
    ]


def fig2(
    zeta_forms: Sequence[str] = tuple(ZETA_FORMS),
    tau: float = 2.0,
    e1: float = 0.5,
    t_grid: Optional[Sequence[float]] = None,
    theta: float = math.pi / 2,
    cfg: Optional[QuadratureConfig] = None,
    workers: int = 1,
    base_env: Optional[EnvConfig] = None,
) -> SweepResult:
    grid = time_grid(10.0) if t_grid is None else np.asarray(t_grid, dtype=float)
    sys = SystemConfig.from_e1(e1)
    blocks = []
    for form in zeta_forms:
        env = _base_env(base_env, tau=tau, theta=theta, zeta_form=form)
        blocks.append((form, [(float(t), sys, env) for t in grid]))
    params = {"figure": "fig2", "tau": tau, "e1": e1, "theta": angle_label(theta), "zeta_forms": ",".join(zeta_forms)}
    return _sweep("fig2", "t", grid, blocks, {**params, **_env_params(_base_env(base_env))}, cfg, workers)


def fig3(
    alpha_set: Sequence[float] = (0.0, 0.5, 0.8, 1.0),
    tau: float = 0.0,
    t_grid: Optional[Sequence[float]] = None,
    theta: float = math.pi / 2,
    cfg: Optional[QuadratureConfig] = None,
    workers: int = 1,
    base_env: Optional[EnvConfig] = None,
) -> SweepResult:
    """Qubit non-Hermiticity sweep; alpha_s = 1 is the exceptional point."""
    grid = time_grid(10.0) if t_grid is None else np.asarray(t_grid, dtype=float)
    env = _base_env(base_env, tau=tau, theta=theta)
    blocks = []
    for alpha in alpha_set:
        sys = SystemConfig(alpha)
        blocks.append((f"alpha_s={alpha:g}", [(float(t), sys, env) for t in grid]))
    params = {"figure": "fig3", "tau": tau, "theta": angle_label(theta), "zeta_form": env.zeta_form}
    return _sweep("fig3", "t", grid, blocks, {**params, **_env_params(env)}, cfg, workers)


def fig4(
    tau_set: Sequence[float] = (0.0, 1.0, 2.0, 3.0, 4.0),
    e1: float = 1.0,
    t_grid: Optional[Sequence[float]] = None,
    theta: float = math.pi / 2,
    cfg: Optional[QuadratureConfig] = None,
    workers: int = 1,
    base_env: Optional[EnvConfig] = None,
) -> SweepResult:
    grid = time_grid(10.0) if t_grid is None else np.asarray(t_grid, dtype=float)
    sys = SystemConfig.from_e1(e1)
    blocks = []
    for tau in tau_set:
        env = _base_env(base_env, tau=tau, theta=theta)
        blocks.append((f"tau={tau:g}", [(float(t), sys, env) for t in grid]))
    params = {"figure": "fig4", "e1": e1, "theta": angle_label(theta), "zeta_form": "quadratic"}
    return _sweep("fig4", "t", grid, blocks, {**params, **_env_params(_base_env(base_env))}, cfg, workers)


def fig5(
    tau_grid: Optional[Sequence[float]] = None,
    theta_set: Sequence[float] = (math.pi / 6, math.pi / 3, math.pi / 2, math.pi),
    t_fixed: float = 10.0,
    e1: float = 1.0,
    cfg: Optional[QuadratureConfig] = None,
    workers: int = 1,
    base_env: Optional[EnvConfig] = None,
) -> SweepResult:
    """Decoherence at fixed time against bath non-Hermiticity, one curve per theta."""
    taus = np.linspace(0.0, 4.0, 41) if tau_grid is None else np.asarray(tau_grid, dtype=float)
    sys = SystemConfig.from_e1(e1)
    blocks = []
    for theta in theta_set:
        jobs = [(t_fixed, sys, _base_env(base_env, tau=float(tau), theta=theta)) for tau in taus]
        blocks.append((f"theta={angle_label(theta)}", jobs))
    params = {
        "figure": "fig5",
        "e1": e1,
        "t": t_fixed,
        "theta_set": ",".join(angle_label(th) for th in theta_set),
        "zeta_form": "quadratic",
    }
    return _sweep("fig5", "tau", taus, blocks, {**params, **_env_params(_base_env(base_env))}, cfg, workers)


FIGURES: Dict[str, Callable[..., SweepResult]] = {
    "fig1a": partial(fig1, math.pi / 2),
    "fig1b": partial(fig1, math.pi / 3),
    "fig1c": partial(fig1, math.pi),
    "fig2": fig2,
    "fig3": fig3,
    "fig4": fig4,
    "fig5": fig5,
}
