"""Parameter algebra for the PT-symmetric qubit and bosonic bath.

The qubit Hamiltonian is ``sigma_x + i*alpha_s*sigma_z`` (gamma fixed to 1,
alpha purely imaginary). Its Hermitian partner is ``E1*sigma_x`` with
``E1 = sqrt(1 - alpha_s**2)``. Units are natural: hbar = k_B = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from .errors import PTBrokenError

Matrix2 = np.ndarray  # 2x2 complex, row-major

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

ZETA_FORMS: Dict[str, Callable[[float], float]] = {
    "quadratic": lambda tau: 1.0 + 4.0 * tau**2,
    "quartic": lambda tau: 1.0 + 4.0 * tau**4,
    "sextic": lambda tau: 1.0 + 4.0 * tau**6,
}


def zeta_of_tau(form: str, tau: float) -> float:
    """Evaluate the registered zeta(tau) form; every form gives 1 at tau = 0."""
    try:
        fn = ZETA_FORMS[form]
    except KeyError:
        raise ValueError(
            f"unknown zeta form {form!r}; expected one of {sorted(ZETA_FORMS)}"
        ) from None
    return float(fn(float(tau)))


def _check_unbroken(alpha_s: float, strict: bool) -> float:
    alpha_s = float(alpha_s)
    if not math.isfinite(alpha_s):
        raise PTBrokenError(f"alpha_s must be finite, got {alpha_s}")
    if strict and abs(alpha_s) >= 1.0:
        raise PTBrokenError(
            f"similarity transform undefined for |alpha_s| >= 1 (got {alpha_s})"
        )
    if abs(alpha_s) > 1.0:
        raise PTBrokenError(f"|alpha_s| > 1 gives a complex spectrum (got {alpha_s})")
    return alpha_s


def system_eigenvalues(alpha_s: float) -> Tuple[float, float]:
    alpha_s = _check_unbroken(alpha_s, strict=False)
    e1 = math.sqrt(1.0 - alpha_s * alpha_s)
    return e1, -e1


def system_hamiltonian_nh(alpha_s: float) -> Matrix2:
    return SIGMA_X + 1j * float(alpha_s) * SIGMA_Z


def system_similarity(alpha_s: float) -> Matrix2:
    """Return ``exp(vartheta*sigma_y)`` with ``vartheta = atanh(alpha_s)/2``.

    Uses the closed form ``cosh(v) I + sinh(v) sigma_y`` (sigma_y squares to I).
    """
    alpha_s = _check_unbroken(alpha_s, strict=True)
    v = 0.5 * math.atanh(alpha_s)
    return math.cosh(v) * IDENTITY + math.sinh(v) * SIGMA_Y


def hermitize_system(alpha_s: float) -> Matrix2:
    """Apply the qubit similarity map numerically; ideally yields ``E1*sigma_x``."""
    eta = system_similarity(alpha_s)
    return eta @ system_hamiltonian_nh(alpha_s) @ np.linalg.inv(eta)


@dataclass(frozen=True)
class SystemConfig:
    """Qubit non-Hermiticity and derived quantities.

    At the exceptional point ``|alpha_s| == 1`` the config is valid with
    ``e1 == 0`` but ``vartheta`` is None since the similarity map diverges.
    """

    alpha_s: float = 0.0
    e1: float = field(init=False)
    vartheta: Optional[float] = field(init=False)

    def __post_init__(self):
        alpha_s = _check_unbroken(self.alpha_s, strict=False)
        object.__setattr__(self, "alpha_s", alpha_s)
        object.__setattr__(self, "e1", system_eigenvalues(alpha_s)[0])
        vartheta = 0.5 * math.atanh(alpha_s) if abs(alpha_s) < 1.0 else None
        object.__setattr__(self, "vartheta", vartheta)

    @property
    def at_exceptional_point(self) -> bool:
        return self.vartheta is None

    @classmethod
    def from_e1(cls, e1: float, sign: float = 1.0) -> "SystemConfig":
        """Build the config whose positive eigenvalue is ``e1`` (0 <= e1 <= 1)."""
        if not 0.0 <= e1 <= 1.0:
            raise PTBrokenError(f"E1 must lie in [0, 1], got {e1}")
        return cls(math.copysign(math.sqrt(1.0 - e1 * e1), sign))


@dataclass(frozen=True)
class EnvConfig:
    """Bath non-Hermiticity, spectral density and thermal parameters.

    ``zeta`` is derived from ``zeta_form`` at ``tau``. ``theta`` is the common
    phase of the couplings; any finite angle is accepted since only its sine
    and cosine enter. ``zero_temperature`` replaces coth(w/2T) by 1.
    """

    tau: float = 0.0
    zeta_form: str = "quadratic"
    delta: float = 1.0
    amp: float = 1.0
    cutoff: float = 0.1
    temperature: float = 300.0
    theta: float = math.pi / 2
    zero_temperature: bool = False
    zeta: float = field(init=False)

    def __post_init__(self):
        for name in ("tau", "theta"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        for name in ("delta", "amp", "cutoff", "temperature"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value}")
        zeta = zeta_of_tau(self.zeta_form, self.tau)
        if zeta * self.delta <= 0:
            raise ValueError("zeta*delta must be positive")
        object.__setattr__(self, "zeta", zeta)

    @property
    def frequency_scale(self) -> float:
        """sqrt(zeta*delta): ratio of dressed mode frequency to bare frequency."""
        return math.sqrt(self.zeta * self.delta)
