"""Coherence lifetimes of a two-chromophore excitonic dimer in a bosonic bath.

Enhanced non-interacting-blip rates (renormalized tunneling, crossover
temperature, Rabi frequency, relaxation and decoherence rates) plus the
resulting population dynamics, for Ohmic and Debye baths.
"""

from .dynamics import PersistenceReport, Trajectory, evolve, persistence
from .rates import (
    DimerSystem,
    NaiveEstimates,
    RateSet,
    RegimeFlags,
    SiteParams,
    compute_rates,
    crossover_temperature,
    decoherence_rate,
    dimensionless_ratios,
    effective_tunneling,
    naive_estimates,
    rabi_frequency,
    reduce_sites,
    relaxation_rate,
    validate_regime,
)
from .spectral import (
    Debye,
    OhmicExp,
    QuadratureControl,
    QuadratureError,
    RegimeError,
    j_omega,
    noise_power,
    ohmic_from_lambda_tau,
    re_u_at_rabi,
)

__version__ = "0.1.0"
