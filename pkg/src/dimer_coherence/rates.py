"""Enhanced-NIBA observables for a biased, bath-coupled excitonic dimer.

Given the bias ``eps``, the coupling ``Delta`` (tunneling ``2 Delta``), a
temperature and a bath model, this module computes the renormalized
tunneling ``Delta_eff``, the level splitting ``Delta_b``, the crossover
temperature ``T_b``, and the Rabi frequency, relaxation rate and
decoherence rate of the low-temperature (``T < T_b``) regime.

Two evaluation paths exist.  ``"closed"`` uses the Ohmic digamma formulas;
``"quadrature"`` evaluates the general spectral-density expressions with
numerical integration and works for any bath.  ``"auto"`` picks the closed
form for Ohmic baths and quadrature otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .special import coth_guarded, gamma_real, re_digamma_imaginary
from .spectral import (
    DEFAULT_QUADRATURE,
    Debye,
    OhmicExp,
    QuadratureControl,
    RegimeError,
    SpectralModel,
    coupling_strength,
    noise_power,
    re_u_at_rabi,
)
from .units import (
    period_from_rabi,
    rate_to_lifetime,
    temperature_from_wavenumber,
    thermal_wavenumber,
)

METHODS = ("auto", "closed", "quadrature")

# Ohmic coherence bound, reused for the Debye equivalent lam*tau.
WEAK_COUPLING_LIMIT = 0.5


@dataclass(frozen=True)
class SiteParams:
    """Raw parameters of the two chromophores, all in cm^-1."""

    eps1: float
    eps2: float
    delta: float

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError(f"inter-site coupling must be > 0, got {self.delta!r}")


def reduce_sites(sites: SiteParams) -> tuple[float, float]:
    """Bias and coupling ``(eps, Delta)`` of the single-excitation two-level system."""
    if sites.eps1 < sites.eps2:
        raise ValueError(
            f"site 1 ({sites.eps1} cm^-1) lies below site 2 ({sites.eps2} cm^-1); "
            "relabel the sites so that site 1 is the higher-energy one")
    return sites.eps1 - sites.eps2, sites.delta


@dataclass(frozen=True)
class DimerSystem:
    """Effective two-level system coupled to a bath.

    Attributes
    ----------
    eps : float
        Bias ``eps1 - eps2`` in cm^-1, non-negative (site 1 is higher).
    delta : float
        Coupling in cm^-1; the bare tunneling element is ``2 * delta``.
    temperature : float
        Kelvin.
    bath : OhmicExp or Debye
    """

    eps: float
    delta: float
    temperature: float
    bath: SpectralModel

    def __post_init__(self):
        if not self.eps >= 0:
            raise ValueError(f"bias must be >= 0 (site 1 higher), got {self.eps!r}")
        if not self.delta > 0:
            raise ValueError(f"coupling must be > 0, got {self.delta!r}")
        if not self.temperature > 0:
            raise ValueError(f"temperature must be > 0 K, got {self.temperature!r}")

    @property
    def tunneling(self) -> float:
        return 2.0 * self.delta

    @property
    def kT(self) -> float:
        return thermal_wavenumber(self.temperature)

    @classmethod
    def from_sites(cls, sites: SiteParams, temperature: float, bath: SpectralModel):
        eps, delta = reduce_sites(sites)
        return cls(eps=eps, delta=delta, temperature=temperature, bath=bath)


@dataclass(frozen=True)
class RegimeFlags:
    bias_ratio_ok: bool
    low_temperature_ok: bool
    weak_coupling_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.bias_ratio_ok and self.low_temperature_ok and self.weak_coupling_ok

    def failed(self) -> list[str]:
        return [name for name in ("bias_ratio_ok", "low_temperature_ok", "weak_coupling_ok")
                if not getattr(self, name)]


@dataclass(frozen=True)
class RateSet:
    """Derived observables; frequencies and rates in cm^-1, ``T_b`` in kelvin."""

    delta_eff: float
    delta_b: float
    crossover_temperature: float
    rabi: float
    gamma_r: float
    gamma: float
    flags: RegimeFlags

    @property
    def period_fs(self) -> float:
        return period_from_rabi(self.rabi)

    @property
    def relaxation_time_fs(self) -> float:
        return rate_to_lifetime(self.gamma_r)

    @property
    def decoherence_time_fs(self) -> float:
        return rate_to_lifetime(self.gamma)


@dataclass(frozen=True)
class NaiveEstimates:
    """High-temperature estimators: ``tau_G`` in fs, ``gamma_phi`` in cm^-1."""

    tau_g_fs: float
    gamma_phi: float

    @property
    def gamma_phi_time_fs(self) -> float:
        return rate_to_lifetime(self.gamma_phi)


def _resolve(method: str, bath: SpectralModel) -> str:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if method == "auto":
        return "closed" if isinstance(bath, OhmicExp) else "quadrature"
    if method == "closed" and not isinstance(bath, OhmicExp):
        raise ValueError("the closed-form path exists only for Ohmic baths")
    return method


def effective_tunneling(system: DimerSystem) -> float:
    r"""Bath-renormalized tunneling element in cm^-1.

    For an Ohmic bath

    .. math::

        \Delta_\mathrm{eff} = [\Gamma(1-2K)\cos\pi K]^{1/(2(1-K))}
            (\tilde\Delta/\omega_c)^{K/(1-K)}\,\tilde\Delta,
        \qquad \tilde\Delta = 2\Delta .

    A Debye bath leaves the tunneling element unrenormalized.
    """
    bare = system.tunneling
    bath = system.bath
    if isinstance(bath, Debye):
        return bare
    K = bath.K
    if K >= 0.5:
        raise RegimeError(f"K={K} >= 0.5: renormalized tunneling vanishes")
    prefactor = (gamma_real(1.0 - 2.0 * K) * math.cos(math.pi * K)) ** (1.0 / (2.0 * (1.0 - K)))
    return prefactor * (bare / bath.omega_c) ** (K / (1.0 - K)) * bare


def level_splitting(system: DimerSystem, delta_eff: float | None = None) -> float:
    if delta_eff is None:
        delta_eff = effective_tunneling(system)
    return math.hypot(delta_eff, system.eps)


def crossover_temperature(system: DimerSystem, delta_eff: float | None = None) -> float:
    """Temperature ``T_b = hbar Delta_b / k_B`` in kelvin."""
    return temperature_from_wavenumber(level_splitting(system, delta_eff))


def rabi_frequency(system: DimerSystem, delta_eff: float, method: str = "auto",
                   control: QuadratureControl = DEFAULT_QUADRATURE) -> float:
    """Renormalized Rabi frequency Omega in cm^-1."""
    method = _resolve(method, system.bath)
    delta_b = level_splitting(system, delta_eff)
    if method == "closed":
        y = delta_b / (2.0 * math.pi * system.kT)
        shift = re_digamma_imaginary(y) - math.log(y)
        omega2 = delta_b**2 + 2.0 * system.bath.K * delta_eff**2 * shift
    else:
        re_u = re_u_at_rabi(system.bath, delta_b, system.temperature, control)
        omega2 = delta_eff**2 * (1.0 - 2.0 * re_u) + system.eps**2
    if not omega2 > 0:
        raise RegimeError(f"Omega^2 = {omega2:.4g} <= 0: no coherent oscillation")
    return math.sqrt(omega2)


def relaxation_rate(system: DimerSystem, delta_eff: float, method: str = "auto") -> float:
    """Relaxation rate gamma_r in cm^-1."""
    method = _resolve(method, system.bath)
    delta_b = level_splitting(system, delta_eff)
    if method == "closed":
        return (math.pi * system.bath.K * coth_guarded(delta_b / (2.0 * system.kT))
                * delta_eff**2 / delta_b)
    return 0.5 * math.pi * delta_eff**2 / delta_b**2 * noise_power(
        system.bath, delta_b, system.temperature)


def decoherence_rate(system: DimerSystem, delta_eff: float, gamma_r: float,
                     method: str = "auto") -> float:
    """Decoherence rate gamma = gamma_r/2 + pure dephasing, in cm^-1.

    The pure-dephasing part is ``(pi/2) (eps/Delta_b)^2 S(0)``; for an Ohmic
    bath the closed form writes ``S(0) = 4 K k_B T`` explicitly.
    """
    method = _resolve(method, system.bath)
    if system.eps == 0:
        return gamma_r / 2.0
    delta_b = level_splitting(system, delta_eff)
    bias2 = system.eps**2 / delta_b**2
    if method == "closed":
        dephasing = 2.0 * math.pi * system.bath.K * bias2 * system.kT
    else:
        dephasing = 0.5 * math.pi * bias2 * noise_power(system.bath, 0.0, system.temperature)
    return gamma_r / 2.0 + dephasing


def naive_estimates(lam: float, omega_c: float, temperature: float) -> NaiveEstimates:
    """Classical-bath estimators ``tau_G = sqrt(hbar^2 / 2 lam k_B T)`` and
    ``gamma_phi = 2 pi (k_B T) lam / omega_c``."""
    if not (lam > 0 and omega_c > 0):
        raise ValueError("lam and omega_c must be > 0")
    kT = thermal_wavenumber(temperature)
    return NaiveEstimates(
        tau_g_fs=rate_to_lifetime(math.sqrt(2.0 * lam * kT)),
        gamma_phi=2.0 * math.pi * kT * lam / omega_c,
    )


def validate_regime(system: DimerSystem, delta_eff: float | None = None) -> RegimeFlags:
    """Validity flags of the enhanced NIBA treatment.  Never raises on a bad regime."""
    if delta_eff is None:
        try:
            delta_eff = effective_tunneling(system)
        except RegimeError:
            return RegimeFlags(system.eps / system.tunneling < 1.0, False, False)
    return RegimeFlags(
        bias_ratio_ok=system.eps / system.tunneling < 1.0,
        low_temperature_ok=system.temperature < crossover_temperature(system, delta_eff),
        weak_coupling_ok=coupling_strength(system.bath) < WEAK_COUPLING_LIMIT,
    )


def compute_rates(system: DimerSystem, method: str = "auto",
                  control: QuadratureControl = DEFAULT_QUADRATURE) -> RateSet:
    """All observables for ``system`` in one :class:`RateSet`."""
    delta_eff = effective_tunneling(system)
    delta_b = level_splitting(system, delta_eff)
    omega = rabi_frequency(system, delta_eff, method, control)
    gamma_r = relaxation_rate(system, delta_eff, method)
    gamma = decoherence_rate(system, delta_eff, gamma_r, method)
    return RateSet(
        delta_eff=delta_eff,
        delta_b=delta_b,
        crossover_temperature=temperature_from_wavenumber(delta_b),
        rabi=omega,
        gamma_r=gamma_r,
        gamma=gamma,
        flags=validate_regime(system, delta_eff),
    )


def dimensionless_ratios(system: DimerSystem) -> dict[str, float]:
    """The dimensionless parameters ``eps/2Delta``, ``K``, ``2Delta/w_c``, ``2Delta/k_BT``.

    For a Debye bath ``K`` is the Ohmic-equivalent ``lam * tau`` and ``w_c`` is ``1/tau``.
    """
    bath = system.bath
    return {
        "eps_over_2delta": system.eps / system.tunneling,
        "K": coupling_strength(bath),
        "two_delta_over_omega_c": system.tunneling / bath.omega_c,
        "two_delta_over_kT": system.tunneling / system.kT,
    }
