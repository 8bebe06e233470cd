import numpy as np
import pytest
from scipy.linalg import expm

from ptdephasing.errors import DimensionError
from ptdephasing.fock import (
    composite_hamiltonian_h,
    composite_hamiltonian_nh,
    composite_residual,
    env_hamiltonian_h,
    env_hamiltonian_nh,
    env_similarity,
    env_similarity_pair,
    ladder,
    position_momentum,
    similarity_residual,
)
from ptdephasing.model import EnvConfig, SystemConfig


def test_ladder_dim2():
    a, ad = ladder(2)
    assert np.array_equal(a, np.array([[0, 1], [0, 0]], dtype=complex))
    assert np.array_equal(ad, a.T)


@pytest.mark.parametrize("dim", [2, 4, 7, 30])
def test_commutator_on_trusted_block(dim):
    a, ad = ladder(dim)
    comm = a @ ad - ad @ a
    n = dim - 1
    # sqrt(k)**2 == k only up to rounding
    np.testing.assert_allclose(comm[:n, :n], np.eye(n), rtol=0, atol=8 * np.finfo(float).eps * dim)


def test_number_operator():
    a, ad = ladder(4)
    np.testing.assert_allclose(np.diag(ad @ a).real, [0, 1, 2, 3], rtol=1e-15)


@pytest.mark.parametrize("dim", [0, 1, 2.5])
def test_bad_dimension(dim):
    with pytest.raises(DimensionError):
        ladder(dim)


def test_residual_needs_dim_8():
    with pytest.raises(DimensionError):
        similarity_residual(6, EnvConfig())


def test_position_momentum_commutator():
    x, p, _ = position_momentum(12, m=2.0, k=3.0)
    comm = x @ p - p @ x
    np.testing.assert_allclose(comm[:11, :11], 1j * np.eye(11), atol=1e-14)


def test_env_nh_reduces_to_oscillator():
    h = env_hamiltonian_nh(20, 1.0, 1.0, 0.0)
    np.testing.assert_allclose(np.diag(h)[:10].real, np.arange(10) + 0.5, atol=1e-13)
    off = h[:10, :10] - np.diag(np.diag(h[:10, :10]))
    assert np.abs(off).max() < 1e-13


def test_env_nh_is_non_hermitian():
    h = env_hamiltonian_nh(10, 1.04, 1.0, 0.1)
    assert np.abs(h - h.conj().T).max() > 0.1


def test_env_nh_spectrum_approaches_hermitian():
    # lowest levels of zeta = 17, tau = 2 converge to sqrt(17)(n + 1/2)
    ref = np.sqrt(17) * (np.arange(2) + 0.5)
    errs = []
    for dim in (20, 40, 80):
        ev = np.linalg.eigvals(env_hamiltonian_nh(dim, 17.0, 1.0, 2.0))
        ev = ev[np.argsort(ev.real)][:2]
        errs.append(np.abs(ev - ref).max())
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-4


def test_env_h_diagonal_and_hermitian():
    h = env_hamiltonian_h(16, 1.0, 1.0)
    np.testing.assert_allclose(np.diag(h)[:8].real, np.arange(8) + 0.5, atol=1e-13)
    assert np.abs(h - h.conj().T).max() == 0.0
    h17 = env_hamiltonian_h(120, 17.0, 1.0)
    assert np.abs(h17 - h17.conj().T).max() == 0.0
    ev = np.linalg.eigvalsh(h17)[:6]
    np.testing.assert_allclose(ev, np.sqrt(17) * (np.arange(6) + 0.5), rtol=1e-9)


def test_env_similarity_identity_at_zero():
    np.testing.assert_array_equal(env_similarity(12, 0.0), np.eye(12))


def test_env_similarity_hermitian_positive_definite():
    eta = env_similarity(30, 0.2)
    assert np.abs(eta - eta.conj().T).max() < 1e-12 * np.abs(eta).max()
    assert np.linalg.eigvalsh(0.5 * (eta + eta.conj().T)).min() > 0


def test_env_similarity_against_pade_and_eigen_oracles():
    _, p, _ = position_momentum(40)
    gen = 0.1 * (p @ p)
    pade = expm(gen)
    evals, evecs = np.linalg.eigh(0.5 * (gen + gen.conj().T))
    eig = (evecs * np.exp(evals)) @ evecs.conj().T
    eta = env_similarity(40, 0.1)
    scale = np.abs(pade).max()
    assert np.abs(eta - eig).max() <= 1e-10 * scale
    assert np.abs(eta - pade).max() <= 1e-10 * scale


def test_env_similarity_inverse():
    eta, eta_inv = env_similarity_pair(40, 0.1)
    np.testing.assert_allclose(eta_inv @ eta, np.eye(40), atol=1e-12)


@pytest.mark.parametrize("dim", [8, 20, 40, 80])
def test_similarity_residual_vanishes_without_non_hermiticity(dim):
    assert similarity_residual(dim, EnvConfig(tau=0.0)).residual <= 1e-12


def test_similarity_residual_converges():
    env = EnvConfig(tau=0.1)
    assert env.zeta == pytest.approx(1.04)
    reports = [similarity_residual(d, env) for d in (20, 40, 80)]
    res = [r.residual for r in reports]
    assert res[0] > res[1] > res[2]
    assert res[2] < 1e-6
    assert [r.block_size for r in reports] == [10, 20, 40]


def test_similarity_residual_dim160_study():
    # exp(tau p^2) is conditioned like e^{2 tau dim}; at dim 160 rounding
    # dominates, yet the residual stays under the threshold used at dim 80
    r = similarity_residual(160, EnvConfig(tau=0.1)).residual
    assert np.isfinite(r) and r < 1e-6


def test_theta_coefficients_vanish_in_hermitian_bath():
    env = EnvConfig(tau=0.0)
    a, ad = ladder(12)
    h_nh = composite_hamiltonian_nh(12, SystemConfig(0.0), env, [0.0])
    bath_only = h_nh[12:, 12:] - h_nh[:12, :12]  # qubit blocks differ by sigma_x terms only
    assert np.abs(bath_only).max() == 0.0
    expected = ad @ a + 0.5 * np.eye(12)
    np.testing.assert_allclose(h_nh[:12, :12], expected, atol=1e-15)


def test_composite_hermitian_limit():
    sys_cfg, env = SystemConfig(0.0), EnvConfig(tau=0.0)
    assert composite_residual(20, sys_cfg, env, [0.1]).residual < 1e-13
    h = composite_hamiltonian_h(20, sys_cfg, env, [0.1])
    assert np.abs(h - h.conj().T).max() == 0.0


def test_composite_qubit_only_nonhermitian():
    r = composite_residual(40, SystemConfig(0.6), EnvConfig(tau=0.0), [0.1])
    assert r.residual < 1e-8
    assert r.kind == "composite" and r.block_size == 40


def test_composite_residual_converges():
    sys_cfg, env = SystemConfig(0.6), EnvConfig(tau=0.1)
    res = [composite_residual(d, sys_cfg, env, [0.1 + 0.05j]).residual for d in (20, 40, 80)]
    assert res[0] > res[1] > res[2]


def test_composite_rejects_multiple_modes():
    with pytest.raises(ValueError):
        composite_residual(10, SystemConfig(0.3), EnvConfig(), [0.1, 0.2])
