"""Truncated Fock-space checks of the bath and composite similarity maps.

Everything here is dense linear algebra on a single bath mode. Truncation
corrupts the highest Fock states first, so residuals are measured on the
top-left half of each matrix (the "trusted block").
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .errors import DimensionError, SingularTransformError
from .model import (
    IDENTITY,
    SIGMA_X,
    EnvConfig,
    SystemConfig,
    system_hamiltonian_nh,
    system_similarity,
)


@dataclass(frozen=True)
class ResidualReport:
    dim: int
    tau: float
    block_size: int
    residual: float
    zeta: float = 1.0
    delta: float = 1.0
    kind: str = "similarity"


def _check_dim(dim: int, minimum: int = 2) -> int:
    if int(dim) != dim or dim < minimum:
        raise DimensionError(f"dim must be an integer >= {minimum}, got {dim}")
    return int(dim)


def ladder(dim: int) -> Tuple[np.ndarray, np.ndarray]:
    """Annihilation and creation matrices with ``a|n> = sqrt(n)|n-1>``."""
    dim = _check_dim(dim)
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)
    return a, a.conj().T


def position_momentum(dim: int, m: float = 1.0, k: float = 1.0):
    """Return ``(x, p, omega)`` for a mode of mass ``m`` and stiffness ``k``."""
    a, ad = ladder(dim)
    omega = math.sqrt(k / m)
    x = (a + ad) / math.sqrt(2.0 * m * omega)
    p = 1j * math.sqrt(m * omega / 2.0) * (ad - a)
    return x, p, omega


def env_hamiltonian_nh(dim, zeta, delta, tau, m=1.0, k=1.0) -> np.ndarray:
    x, p, omega = position_momentum(dim, m, k)
    return (
        (zeta - 4.0 * delta * tau**2) * (p @ p) / (2.0 * m)
        + 0.5 * delta * k * (x @ x)
        + 1j * delta * tau * omega * (x @ p + p @ x)
    )


def env_hamiltonian_h(dim, zeta, delta, m=1.0, k=1.0) -> np.ndarray:
    x, p, _ = position_momentum(dim, m, k)
    return zeta * (p @ p) / (2.0 * m) + 0.5 * delta * k * (x @ x)


def _exp_hermitian(generator: np.ndarray, sign: float = 1.0) -> np.ndarray:
    herm = 0.5 * (generator + generator.conj().T)
    evals, evecs = np.linalg.eigh(herm)
    return (evecs * np.exp(sign * evals)) @ evecs.conj().T


def _similarity_generator(dim, tau, m, omega) -> np.ndarray:
    _, p, _ = position_momentum(dim, m, m * omega**2)
    return tau * (p @ p) / (m * omega)


def env_similarity(dim: int, tau: float, m: float = 1.0, omega: float = 1.0) -> np.ndarray:
    """``exp(tau p^2 / (m omega))`` via eigendecomposition of the Hermitian exponent."""
    return _exp_hermitian(_similarity_generator(dim, tau, m, omega))


def env_similarity_pair(dim, tau, m=1.0, omega=1.0):
    """Return ``(eta, eta_inv)``; the inverse is exponentiated, never solved for."""
    gen = _similarity_generator(dim, tau, m, omega)
    eta, eta_inv = _exp_hermitian(gen), _exp_hermitian(gen, sign=-1.0)
    if not (np.all(np.isfinite(eta)) and np.all(np.isfinite(eta_inv))):
        raise SingularTransformError(f"bath similarity overflowed at dim={dim}, tau={tau}")
    return eta, eta_inv


def _block_max(mat: np.ndarray, idx) -> float:
    return float(np.abs(mat[np.ix_(idx, idx)]).max())


def similarity_residual(dim: int, env: EnvConfig, m: float = 1.0, k: float = 1.0) -> ResidualReport:
    dim = _check_dim(dim, minimum=8)
    omega = math.sqrt(k / m)
    h_nh = env_hamiltonian_nh(dim, env.zeta, env.delta, env.tau, m, k)
    h = env_hamiltonian_h(dim, env.zeta, env.delta, m, k)
    eta, eta_inv = env_similarity_pair(dim, env.tau, m, omega)
    block = dim // 2
    res = _block_max(eta @ h_nh @ eta_inv - h, np.arange(block))
    return ResidualReport(dim, env.tau, block, res, env.zeta, env.delta, "similarity")


def composite_hamiltonian_nh(dim, sys: SystemConfig, env: EnvConfig, couplings: Sequence[complex], m=1.0, k=1.0):
    """Single-mode non-Hermitian spin-boson Hamiltonian, ordering qubit (x) bath."""
    (c,) = couplings
    a, ad = ladder(dim)
    eye = np.eye(dim)
    omega = math.sqrt(k / m)
    zeta, delta, tau = env.zeta, env.delta, env.tau
    theta_plus = delta * (tau + 0.5) ** 2 - zeta / 4.0
    theta_minus = delta * (tau - 0.5) ** 2 - zeta / 4.0
    bath = omega * (
        theta_plus * (a @ a)
        + theta_minus * (ad @ ad)
        + ((zeta + delta) / 4.0 - delta * tau**2) * (2.0 * (ad @ a) + eye)
    )
    coupling = c * ad + np.conj(c) * a + tau * (c + np.conj(c)) * (a - ad)
    h_s = system_hamiltonian_nh(sys.alpha_s)
    return np.kron(h_s, eye) + np.kron(IDENTITY, bath) + np.kron(h_s, coupling)


def composite_hamiltonian_h(dim, sys: SystemConfig, env: EnvConfig, couplings: Sequence[complex], m=1.0, k=1.0):
    (c,) = couplings
    a, ad = ladder(dim)
    eye = np.eye(dim)
    omega = math.sqrt(k / m)
    zeta, delta = env.zeta, env.delta
    bath = omega * (
        (zeta + delta) / 2.0 * (ad @ a + 0.5 * eye)
        + (delta - zeta) / 4.0 * (a @ a + ad @ ad)
    )
    e1x = sys.e1 * SIGMA_X
    return np.kron(e1x, eye) + np.kron(e1x, c * ad + np.conj(c) * a) + np.kron(IDENTITY, bath)


def composite_residual(
    dim: int,
    sys: SystemConfig,
    env: EnvConfig,
    couplings: Sequence[complex],
    m: float = 1.0,
    k: float = 1.0,
) -> ResidualReport:
    """Max-entry residual of ``(eta_S x eta_E) H_NH (eta_S x eta_E)^-1 - H``.

    The trusted block keeps both qubit levels and the lower half of the
    bath Fock states.
    """
    dim = _check_dim(dim, minimum=8)
    if len(couplings) != 1:
        raise ValueError("composite verification supports exactly one bath mode")
    omega = math.sqrt(k / m)
    eta_s = system_similarity(sys.alpha_s)
    eta_s_inv = np.linalg.inv(eta_s)
    eta_e, eta_e_inv = env_similarity_pair(dim, env.tau, m, omega)
    h_nh = composite_hamiltonian_nh(dim, sys, env, couplings, m, k)
    h = composite_hamiltonian_h(dim, sys, env, couplings, m, k)
    mapped = np.kron(eta_s, eta_e) @ h_nh @ np.kron(eta_s_inv, eta_e_inv)
    block = dim // 2
    idx = np.concatenate([np.arange(block), dim + np.arange(block)])
    res = _block_max(mapped - h, idx)
    return ResidualReport(dim, env.tau, 2 * block, res, env.zeta, env.delta, "composite")
