"""Decoherence of a PT-symmetric qubit coupled to a PT-symmetric bosonic bath."""

from .decoherence import (
    DecoherenceSeries,
    Mode,
    QubitState,
    dephasing_channel,
    discretize_spectral_density,
    evolve_qubit,
    lambda_continuum,
    lambda_discrete,
    lambda_hermitian,
    lambda_integrand,
    mu,
)
from .model import EnvConfig, SystemConfig, zeta_of_tau
from .quadrature import QuadratureConfig, QuadratureResult, integrate_cutoff

__version__ = "0.1.0"
