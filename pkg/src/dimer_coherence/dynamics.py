"""Population dynamics of the dimer and coherence persistence.

The population difference ``P = rho1 - rho2`` follows a two-channel form:
an incoherent part relaxing at ``gamma_r`` and a coherent part oscillating
at ``Omega`` and decaying at ``gamma``::

    P(t) = P_inf + (eps^2/Db^2 - P_inf) exp(-gamma_r t)
           + (Deff^2/Db^2) exp(-gamma t) [cos(Omega t) + (gamma/Omega) sin(Omega t)]

with ``P_inf = -(eps/Db) tanh(Db / 2 k_B T)``.  The excitation starts on
site 1, so ``P(0) = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rates import DimerSystem, RateSet
from .units import FS, angular_frequency

DEFAULT_T_MAX_FS = 1000.0
DEFAULT_SAMPLES = 2048


@dataclass(frozen=True)
class Trajectory:
    t_fs: np.ndarray
    P: np.ndarray
    rho1: np.ndarray
    rho2: np.ndarray


@dataclass(frozen=True)
class PersistenceReport:
    threshold: float
    time_fs: float


def equilibrium_difference(rates: RateSet, system: DimerSystem) -> float:
    """Long-time population difference ``P_inf``."""
    return -(system.eps / rates.delta_b) * math.tanh(rates.delta_b / (2.0 * system.kT))


def population_difference(rates: RateSet, system: DimerSystem, t_fs) -> np.ndarray:
    """``P(t)`` at the times ``t_fs`` (fs)."""
    t = np.asarray(t_fs, dtype=float) * FS
    p_inf = equilibrium_difference(rates, system)
    incoherent = system.eps**2 / rates.delta_b**2
    coherent = rates.delta_eff**2 / rates.delta_b**2
    omega = angular_frequency(rates.rabi)
    g_r = angular_frequency(rates.gamma_r)
    g = angular_frequency(rates.gamma)
    phase = omega * t
    envelope = np.exp(-g * t) * (np.cos(phase) + (g / omega) * np.sin(phase))
    # incoherent + coherent == 1, so P = 1 - (two non-negative decays); P(0) is exactly 1
    return 1.0 + (incoherent - p_inf) * np.expm1(-g_r * t) - coherent * (1.0 - envelope)


def evolve(rates: RateSet, system: DimerSystem, t_max_fs: float = DEFAULT_T_MAX_FS,
           n_samples: int = DEFAULT_SAMPLES) -> Trajectory:
    """Site populations on a uniform grid ``[0, t_max_fs]`` with ``n_samples`` points."""
    if n_samples < 2:
        raise ValueError(f"need at least 2 samples, got {n_samples}")
    if not t_max_fs > 0:
        raise ValueError(f"t_max_fs must be > 0, got {t_max_fs!r}")
    if not rates.rabi > 0:
        raise ValueError("Rabi frequency must be > 0")
    t = np.linspace(0.0, t_max_fs, n_samples)
    P = population_difference(rates, system, t)
    rho1 = 0.5 * (1.0 + P)
    rho2 = 1.0 - rho1
    return Trajectory(t_fs=t, P=P, rho1=rho1, rho2=rho2)


def coherent_amplitude(rates: RateSet) -> float:
    """Initial height of the coherent envelope, ``(Deff/Db)^2 sqrt(1 + (gamma/Omega)^2)``."""
    ratio = rates.gamma / rates.rabi
    return (rates.delta_eff / rates.delta_b) ** 2 * math.sqrt(1.0 + ratio * ratio)


def persistence(rates: RateSet, threshold: float) -> PersistenceReport:
    """Time in fs after which the coherent envelope falls below ``threshold``."""
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must lie in (0, 1), got {threshold!r}")
    amp = coherent_amplitude(rates)
    if amp <= threshold:
        return PersistenceReport(threshold, 0.0)
    if rates.gamma == 0:
        return PersistenceReport(threshold, math.inf)
    decay = angular_frequency(rates.gamma) * FS  # per fs
    return PersistenceReport(threshold, math.log(amp / threshold) / decay)
