"""Adaptive Gauss-Kronrod quadrature on [0, inf) for exponentially cut-off integrands.

The half-line is truncated at ``upper = truncation_factor * cutoff`` and
``upper`` is doubled until a rigorous bound on the dropped tail is below
``abs_tol``. The bound needs a majorant of the form

    |f(w)| <= scale * (1 + w)**power * exp(-w / cutoff)

which callers that know their integrand should pass explicitly. The finite
interval is then covered by panels no wider than ``max_panel`` and refined by
bisection of the worst panels, using the 7-point Gauss / 15-point Kronrod
pair for both the value and the error estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import NonConvergenceError, NonFiniteError

# Kronrod abscissae on [0, 1] (descending) and weights; QUADPACK qk15 values.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# Gauss weights for the abscissae _XGK[1], _XGK[3], _XGK[5], _XGK[7].
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[[13, 11, 9]] = _WG[:3]

_EPS = np.finfo(float).eps
_MAX_DOUBLINGS = 30


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 200
    truncation_factor: float = 60.0

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 0:
            raise ValueError("max_subdivisions must be non-negative")
        if not self.truncation_factor > 0:
            raise ValueError("truncation_factor must be positive")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int
    upper: float = math.inf
    panels: int = 0


Majorant = Tuple[float, float]


def tail_bound(majorant: Majorant, cutoff: float, upper: float) -> float:
    """Bound ``int_upper^inf scale (1+w)^power exp(-w/cutoff) dw``.

    For ``w >= upper`` the log-derivative of the envelope is at most
    ``-kappa`` with ``kappa = 1/cutoff - power/(1+upper)``, so the tail is
    below ``envelope(upper) / kappa``. Returns inf when kappa <= 0.
    """
    scale, power = majorant
    if scale == 0:
        return 0.0
    kappa = 1.0 / cutoff - power / (1.0 + upper)
    if kappa <= 0:
        return math.inf
    log_env = math.log(scale) + power * math.log1p(upper) - upper / cutoff
    return math.exp(log_env) / kappa


def empirical_majorant(f, cutoff: float, upper: float, power: float = 4.0, samples: int = 2001) -> Majorant:
    """Heuristic majorant from samples on [0, upper]; not a certified bound."""
    w = np.linspace(0.0, upper, samples)
    with np.errstate(divide="ignore"):
        logs = np.log(np.abs(_evaluate(f, w))) + w / cutoff - power * np.log1p(w)
    top = float(np.max(logs))
    return (0.0 if top == -math.inf else math.exp(top), power)


def _evaluate(f, w: np.ndarray) -> np.ndarray:
    vals = np.asarray(f(w), dtype=float)
    if vals.shape != w.shape:
        vals = np.broadcast_to(vals, w.shape)
    if not np.all(np.isfinite(vals)):
        bad = w[~np.isfinite(vals)]
        raise NonFiniteError(f"integrand not finite at w={bad[0]!r}")
    return vals


def gk15(f, a: np.ndarray, b: np.ndarray):
    """Kronrod estimates and |K15 - G7| error estimates on each panel [a_i, b_i]."""
    centre = 0.5 * (a + b)
    half = 0.5 * (b - a)
    w = centre[:, None] + half[:, None] * NODES[None, :]
    vals = _evaluate(f, w)
    kron = half * (vals @ KRONROD_WEIGHTS)
    gauss = half * (vals @ GAUSS_WEIGHTS)
    resabs = np.abs(half) * (np.abs(vals) @ KRONROD_WEIGHTS)
    err = np.maximum(np.abs(kron - gauss), 50.0 * _EPS * resabs)
    return kron, err


def integrate_cutoff(
    f: Callable[[np.ndarray], np.ndarray],
    cutoff: float,
    cfg: Optional[QuadratureConfig] = None,
    *,
    max_panel: Optional[float] = None,
    majorant: Optional[Majorant] = None,
) -> QuadratureResult:
    """Integrate ``f`` over [0, inf).

    ``f`` must accept a numpy array of frequencies and be finite on
    [0, upper]; a removable singularity at 0 is the caller's job.
    ``max_panel`` caps the panel width, which callers set from the
    oscillation scale of the integrand.
    """
    cfg = cfg or QuadratureConfig()
    if not cutoff > 0:
        raise ValueError("cutoff must be positive")
    upper = cfg.truncation_factor * cutoff
    if majorant is None:
        majorant = empirical_majorant(f, cutoff, upper)
    tail = tail_bound(majorant, cutoff, upper)
    for _ in range(_MAX_DOUBLINGS):
        if tail <= cfg.abs_tol:
            break
        upper *= 2.0
        tail = tail_bound(majorant, cutoff, upper)
    else:
        raise NonConvergenceError(f"tail bound {tail:.3g} above abs_tol after {_MAX_DOUBLINGS} doublings")

    width = upper if max_panel is None else min(max_panel, upper)
    if not width > 0:
        raise ValueError("max_panel must be positive")
    n0 = max(1, int(math.ceil(upper / width - 1e-9)))
    edges = np.linspace(0.0, upper, n0 + 1)
    a, b = edges[:-1], edges[1:]
    vals, errs = gk15(f, a, b)
    evaluations = 15 * n0
    splits = 0
    min_width = 64 * _EPS * upper

    while True:
        value = math.fsum(vals)
        error = math.fsum(errs) + tail
        tol = max(cfg.rel_tol * abs(value), cfg.abs_tol)
        if error <= tol:
            return QuadratureResult(value, error, evaluations, upper, len(a))
        order = np.argsort(errs)[::-1]
        # bisect the fewest worst panels that could bring the sum under tol/2
        excess = errs.sum() - 0.5 * (tol - tail)
        count = int(np.searchsorted(np.cumsum(errs[order]), excess)) + 1
        pick = order[: min(count, len(order))]
        partial = QuadratureResult(value, error, evaluations, upper, len(a))
        if splits + len(pick) > cfg.max_subdivisions:
            raise NonConvergenceError(
                f"subdivision budget {cfg.max_subdivisions} exhausted "
                f"(error {error:.3g} > tol {tol:.3g})",
                partial,
            )
        if np.any(b[pick] - a[pick] < min_width):
            raise NonConvergenceError("panels reached roundoff width", partial)
        mid = 0.5 * (a[pick] + b[pick])
        new_a = np.concatenate([a[pick], mid])
        new_b = np.concatenate([mid, b[pick]])
        new_vals, new_errs = gk15(f, new_a, new_b)
        keep = np.ones(len(a), dtype=bool)
        keep[pick] = False
        a = np.concatenate([a[keep], new_a])
        b = np.concatenate([b[keep], new_b])
        vals = np.concatenate([vals[keep], new_vals])
        errs = np.concatenate([errs[keep], new_errs])
        evaluations += 30 * len(pick)
        splits += len(pick)
