"""Decoherence factor of the qubit and the pure-dephasing channels it drives.

After mapping to the Hermitian partner, the propagator factorizes as
``exp[sigma_x (x) sum_i (mu_i a_i^+ - mu_i^* a_i)]``. The two sigma_x pointer
states therefore displace each bath mode by ``+mu_i`` and ``-mu_i``, and the
coherence between them decays by the thermal characteristic function of the
relative displacement ``2*mu_i``:

    Lambda(t) = sum_i 2 |mu_i(t)|^2 coth(w_i / 2T)

In the continuum limit ``sum |c_i|^2 -> int J(w) dw`` with
``J(w) = A w exp(-w/W)`` this becomes the integral evaluated by
:func:`lambda_continuum`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

import numpy as np

from .model import EnvConfig, SystemConfig
from .quadrature import QuadratureConfig, QuadratureResult, integrate_cutoff

_SERIES_CUTOFF = 1e-3


@dataclass(frozen=True)
class Mode:
    omega: float
    coupling: complex

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValueError(f"mode frequency must be positive, got {self.omega}")


@dataclass(frozen=True)
class QubitState:
    """Reduced 2x2 density matrix, validated on construction."""

    rho00: complex
    rho01: complex
    rho10: complex
    rho11: complex

    def __post_init__(self):
        if abs(self.rho10 - np.conj(self.rho01)) > 1e-12:
            raise ValueError("density matrix is not Hermitian")
        if abs(complex(self.rho00).imag) > 1e-12 or abs(complex(self.rho11).imag) > 1e-12:
            raise ValueError("populations must be real")
        if abs(self.rho00 + self.rho11 - 1.0) > 1e-12:
            raise ValueError("density matrix must have unit trace")
        det = (self.rho00 * self.rho11).real - abs(self.rho01) ** 2
        if det < -1e-12 or self.rho00.real < -1e-12 or self.rho11.real < -1e-12:
            raise ValueError("density matrix is not positive semidefinite")

    @classmethod
    def from_matrix(cls, rho) -> "QubitState":
        rho = np.asarray(rho, dtype=complex)
        return cls(complex(rho[0, 0]), complex(rho[0, 1]), complex(rho[1, 0]), complex(rho[1, 1]))

    @classmethod
    def pure(cls, amp0: complex, amp1: complex) -> "QubitState":
        psi = np.array([amp0, amp1], dtype=complex)
        psi /= np.linalg.norm(psi)
        return cls.from_matrix(np.outer(psi, psi.conj()))

    def matrix(self) -> np.ndarray:
        return np.array([[self.rho00, self.rho01], [self.rho10, self.rho11]], dtype=complex)

    def purity(self) -> float:
        m = self.matrix()
        return float(np.trace(m @ m).real)


@dataclass(frozen=True)
class DecoherenceSeries:
    times: np.ndarray
    values: np.ndarray
    errors: np.ndarray
    label: str = ""

    def __post_init__(self):
        for name in ("times", "values", "errors"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if not (len(self.times) == len(self.values) == len(self.errors)):
            raise ValueError("series arrays must have equal length")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("decoherence values must be finite")


# -- special functions -------------------------------------------------------

def coth(x):
    """coth(x) for x > 0, by series below 1e-3."""
    x = np.asarray(x, dtype=float)
    small = x < _SERIES_CUTOFF
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = 1.0 / np.tanh(x)
        series = 1.0 / x + x / 3.0 - x**3 / 45.0
    out = np.where(small, series, direct)
    return out if out.ndim else float(out)


def x_coth_x(x):
    """x*coth(x), equal to 1 at x = 0."""
    x = np.asarray(x, dtype=float)
    small = x < _SERIES_CUTOFF
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = x / np.tanh(x)
    series = 1.0 + x**2 / 3.0 - x**4 / 45.0
    out = np.where(small, series, direct)
    return out if out.ndim else float(out)


def _sinc(x):
    # sin(x)/x with the unnormalised convention
    return np.sinc(np.asarray(x, dtype=float) / math.pi)


def thermal_weight(omega, env: EnvConfig):
    """``omega * coth(omega / 2T)``, finite at omega = 0 (value 2T)."""
    omega = np.asarray(omega, dtype=float)
    if env.zero_temperature:
        return omega
    return 2.0 * env.temperature * x_coth_x(omega / (2.0 * env.temperature))


# -- discrete modes ----------------------------------------------------------

def gamma_of(omega, zeta: float, delta: float):
    """Dressed mode frequency ``sqrt(zeta*delta) * omega``."""
    if not (zeta > 0 and delta > 0):
        raise ValueError("zeta and delta must be positive")
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("mode frequencies must be positive")
    out = math.sqrt(zeta * delta) * omega
    return out if out.ndim else float(out)


def mu(t: float, mode: Mode, e1: float, zeta: float, delta: float) -> complex:
    """Displacement amplitude of one bath mode at time ``t``."""
    return complex(_mu_array(t, np.array([mode.omega]), np.array([mode.coupling]), e1, zeta, delta)[0])


def _mu_array(t, omega, c, e1, zeta, delta):
    if t < 0:
        raise ValueError("t must be non-negative")
    gam = gamma_of(omega, zeta, delta)
    gam = np.atleast_1d(gam)
    half = np.sin(0.5 * gam * t) ** 2
    return (
        e1 * omega / gam**2 * half * ((delta - zeta) * np.conj(c) - (zeta + delta) * c)
        - 1j * e1 * c / gam * np.sin(gam * t)
    )


def wigner_exponent(mu_value, omega, temperature: float, zero_temperature: bool = False):
    """``|mu|^2/2 * coth(omega/2T)``: minus the log thermal average of D(mu)."""
    weight = 1.0 if zero_temperature else coth(np.asarray(omega, dtype=float) / (2.0 * temperature))
    return 0.5 * np.abs(mu_value) ** 2 * weight


def lambda_discrete(
    t: float,
    modes: Sequence[Mode],
    e1: float,
    zeta: float,
    delta: float,
    temperature: float,
    zero_temperature: bool = False,
) -> float:
    if not zero_temperature and not temperature > 0:
        raise ValueError("temperature must be positive")
    if not modes:
        return 0.0
    omega = np.array([m.omega for m in modes], dtype=float)
    c = np.array([m.coupling for m in modes], dtype=complex)
    rel = 2.0 * _mu_array(t, omega, c, e1, zeta, delta)
    terms = wigner_exponent(rel, omega, temperature, zero_temperature)
    return math.fsum(terms)


def discretize_spectral_density(amp: float, cutoff: float, theta: float, n_modes: int, omega_max: float) -> List[Mode]:
    """Midpoint modes with ``|c_i|^2 = J(w_i) dw`` and common phase ``theta``."""
    if n_modes < 1 or int(n_modes) != n_modes:
        raise ValueError("n_modes must be a positive integer")
    if not (omega_max > 0 and amp > 0 and cutoff > 0):
        raise ValueError("amp, cutoff and omega_max must be positive")
    dw = omega_max / n_modes
    omega = (np.arange(n_modes) + 0.5) * dw
    mag = np.sqrt(amp * omega * np.exp(-omega / cutoff) * dw)
    phase = complex(math.cos(theta), math.sin(theta))
    return [Mode(float(w), complex(m * phase)) for w, m in zip(omega, mag)]


# -- continuum ---------------------------------------------------------------

def _theta_coefficients(env: EnvConfig):
    cos_t, sin_t = math.cos(env.theta), math.sin(env.theta)
    # zeta^2 cos^2 + delta^2 sin^2, written so that zeta == delta is exactly theta-free
    diag = env.delta**2 + (env.zeta**2 - env.delta**2) * cos_t**2
    cross = (env.delta - env.zeta) * cos_t * sin_t
    return diag, cross


def lambda_integrand(omega, t: float, sys: SystemConfig, env: EnvConfig):
    """Spectral integrand of the continuum decoherence factor.

    Rewritten with ``u = Gamma t / 2`` and sinc factors so it is finite and
    NaN-free for every ``omega >= 0``; at ``omega = 0`` it equals
    ``4 E1^2 A T t^2``.
    """
    omega = np.asarray(omega, dtype=float)
    if t < 0:
        raise ValueError("t must be non-negative")
    if np.any(omega < 0):
        raise ValueError("omega must be non-negative")
    g = env.frequency_scale
    diag, cross = _theta_coefficients(env)
    u = 0.5 * g * omega * t
    s1 = _sinc(u)
    s2 = _sinc(2.0 * u)
    # bracket / u^2 with every sin(k u)/(k u) kept as a sinc
    ratio = 4.0 * diag * u**2 * s1**4 + 4.0 * g**2 * s2**2 + 8.0 * g * cross * u * s1**2 * s2
    pref = sys.e1**2 * env.amp * t**2 / (2.0 * g**2)
    out = pref * np.exp(-omega / env.cutoff) * ratio * thermal_weight(omega, env)
    return out if out.ndim else float(out)


def _integrand_majorant(t, sys, env):
    g = env.frequency_scale
    diag, cross = _theta_coefficients(env)
    coeffs = 4.0 * g**2 + 4.0 * g**2 * abs(cross) * t + abs(diag) * g**2 * t**2
    thermal = 1.0 if env.zero_temperature else 2.0 * env.temperature + 1.0
    return sys.e1**2 * env.amp * t**2 / (2.0 * g**2) * coeffs * thermal, 3.0


def oscillation_panel(cutoff: float, rate: float, t: float) -> float:
    """Panel cap ``min(cutoff, pi/(rate*t)) / 4``."""
    if t <= 0 or rate <= 0:
        return cutoff / 4.0
    return min(cutoff, math.pi / (rate * t)) / 4.0


def lambda_continuum(t: float, sys: SystemConfig, env: EnvConfig, cfg: Optional[QuadratureConfig] = None) -> QuadratureResult:
    if t < 0:
        raise ValueError("t must be non-negative")
    if t == 0 or sys.e1 == 0:
        return QuadratureResult(0.0, 0.0, 1, 0.0, 0)
    return integrate_cutoff(
        lambda w: lambda_integrand(w, t, sys, env),
        env.cutoff,
        cfg,
        max_panel=oscillation_panel(env.cutoff, env.frequency_scale, t),
        majorant=_integrand_majorant(t, sys, env),
    )


def hermitian_integrand(omega, t: float, amp: float, cutoff: float, temperature: float):
    """``4A exp(-w/W) (1 - cos wt)/w coth(w/2T)`` in a cancellation-free form."""
    omega = np.asarray(omega, dtype=float)
    env_factor = np.exp(-omega / cutoff)
    # (1 - cos wt)/w = (t^2 w / 2) sinc^2(wt/2);  w coth(w/2T) = 2T x coth x
    weight = 2.0 * temperature * x_coth_x(omega / (2.0 * temperature))
    out = 2.0 * amp * t**2 * env_factor * _sinc(0.5 * omega * t) ** 2 * weight
    return out if out.ndim else float(out)


def lambda_hermitian(
    t: float,
    amp: float = 1.0,
    cutoff: float = 0.1,
    temperature: float = 300.0,
    cfg: Optional[QuadratureConfig] = None,
) -> QuadratureResult:
    """Reference decoherence factor of the ordinary spin-boson model."""
    if t < 0:
        raise ValueError("t must be non-negative")
    if t == 0:
        return QuadratureResult(0.0, 0.0, 1, 0.0, 0)
    return integrate_cutoff(
        lambda w: hermitian_integrand(w, t, amp, cutoff, temperature),
        cutoff,
        cfg,
        max_panel=oscillation_panel(cutoff, 1.0, t),
        majorant=(2.0 * amp * t**2 * (2.0 * temperature + 1.0), 1.0),
    )


def lambda_series(
    times: Iterable[float],
    sys: SystemConfig,
    env: EnvConfig,
    cfg: Optional[QuadratureConfig] = None,
    label: str = "",
) -> DecoherenceSeries:
    times = np.asarray(list(times), dtype=float)
    results = [lambda_continuum(float(t), sys, env, cfg) for t in times]
    return DecoherenceSeries(
        times,
        [r.value for r in results],
        [r.abs_error_estimate for r in results],
        label,
    )


# -- channels ----------------------------------------------------------------

def evolve_qubit(rho0: QubitState, lambda_value: float) -> QubitState:
    """Damp the coherences by ``exp(-lambda_value)``; populations are untouched."""
    if not lambda_value >= 0:
        raise ValueError(f"decoherence factor must be non-negative, got {lambda_value}")
    factor = math.exp(-lambda_value)
    off = rho0.rho01 * factor
    return QubitState(rho0.rho00, off, off.conjugate(), rho0.rho11)


def kraus_operators(p: float) -> np.ndarray:
    """Phase-damping Kraus set ``(sqrt(1-p) I, diag(sqrt p, 0), diag(0, sqrt p))``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    k = np.zeros((3, 2, 2), dtype=complex)
    k[0] = math.sqrt(1.0 - p) * np.eye(2)
    k[1, 0, 0] = math.sqrt(p)
    k[2, 1, 1] = math.sqrt(p)
    return k


def apply_kraus(rho: np.ndarray, kraus: np.ndarray) -> np.ndarray:
    return np.einsum("kij,jl,kml->im", kraus, rho, kraus.conj())


def dephasing_channel(rho0: QubitState, p: float) -> QubitState:
    return QubitState.from_matrix(apply_kraus(rho0.matrix(), kraus_operators(p)))


def iterate_channel(rho0: QubitState, rate: float, t: float, steps: int) -> QubitState:
    """Apply the channel with ``p = rate*dt`` ``steps`` times over total time ``t``."""
    kraus = kraus_operators(rate * t / steps)
    rho = rho0.matrix()
    for _ in range(steps):
        rho = apply_kraus(rho, kraus)
    return QubitState.from_matrix(rho)

