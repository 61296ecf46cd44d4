"""Bath spectral densities, noise power and the thermal shift integral.

Two bath models are supported:

* :class:`OhmicExp` -- ``J(w) = 2 K w exp(-w / w_c)``
* :class:`Debye` -- ``J(w) = 2 lam (w tau) / (1 + (w tau)^2)``

All frequencies are in cm^-1.  Products ``w * tau`` are formed from the
angular frequency in rad/s and ``tau`` in seconds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import integrate

from .special import coth_guarded
from .units import angular_time_product, thermal_wavenumber, wavenumber_from_angular, FS


class RegimeError(ValueError):
    """Parameters fall outside the domain where the model is defined."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message: str, achieved_error: float):
        super().__init__(f"{message} (achieved error estimate {achieved_error:.3e})")
        self.achieved_error = achieved_error


@dataclass(frozen=True)
class OhmicExp:
    """Ohmic bath with exponential cutoff.

    Attributes
    ----------
    K : float
        Dimensionless damping strength, ``0 <= K < 1/2``.
    omega_c : float
        Cutoff frequency in cm^-1.
    """

    K: float
    omega_c: float

    def __post_init__(self):
        if not 0.0 <= self.K < 0.5:
            raise RegimeError(f"Ohmic damping K must lie in [0, 0.5), got {self.K!r}")
        if not self.omega_c > 0:
            raise ValueError(f"cutoff omega_c must be > 0, got {self.omega_c!r}")

    @property
    def reorganization_energy(self) -> float:
        return 2.0 * self.K * self.omega_c


@dataclass(frozen=True)
class Debye:
    """Debye (overdamped Drude) bath.

    Attributes
    ----------
    lam : float
        Reorganization energy in cm^-1.
    tau_fs : float
        Bath relaxation time in fs.
    """

    lam: float
    tau_fs: float

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"reorganization energy must be > 0, got {self.lam!r}")
        if not self.tau_fs > 0:
            raise ValueError(f"relaxation time must be > 0, got {self.tau_fs!r}")

    @property
    def reorganization_energy(self) -> float:
        return self.lam

    @property
    def omega_c(self) -> float:
        """Debye cutoff 1/tau in cm^-1."""
        return wavenumber_from_angular(1.0 / (self.tau_fs * FS))


SpectralModel = Union[OhmicExp, Debye]


@dataclass(frozen=True)
class QuadratureControl:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    panel_budget: int = 1000

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol"):
            value = getattr(self, name)
            if not 0.0 < value <= 1e-6:
                raise ValueError(f"{name} must lie in (0, 1e-6], got {value!r}")
        if self.panel_budget < 1000:
            raise ValueError("panel_budget must be at least 1000")


DEFAULT_QUADRATURE = QuadratureControl()


def ohmic_from_lambda_tau(lam: float, tau_fs: float) -> OhmicExp:
    """Ohmic bath from a reorganization energy and a phonon relaxation time.

    Uses ``tau = pi / (2 w_c)`` and ``lam = 2 K w_c``.
    """
    if not lam > 0:
        raise ValueError(f"reorganization energy must be > 0, got {lam!r}")
    if not tau_fs > 0:
        raise ValueError(f"relaxation time must be > 0, got {tau_fs!r}")
    omega_c = wavenumber_from_angular(math.pi / (2.0 * tau_fs * FS))
    K = lam / (2.0 * omega_c)
    if K >= 0.5:
        raise RegimeError(
            f"lam={lam} cm^-1 and tau={tau_fs} fs give K={K:.4g}; K must be < 0.5")
    return OhmicExp(K=K, omega_c=omega_c)


def low_frequency_slope(model: SpectralModel) -> float:
    """dJ/dw at w = 0 (dimensionless)."""
    if isinstance(model, OhmicExp):
        return 2.0 * model.K
    return 2.0 * model.lam * float(angular_time_product(1.0, model.tau_fs))


def coupling_strength(model: SpectralModel) -> float:
    """Ohmic-equivalent damping: K itself, or ``lam * tau`` for a Debye bath.

    Only meant for regime diagnostics.
    """
    return 0.5 * low_frequency_slope(model)


def j_omega(model: SpectralModel, omega):
    """Spectral density J(w) in cm^-1 for ``omega`` in cm^-1 (scalar or array)."""
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0):
        raise ValueError("spectral density requested at negative frequency")
    if isinstance(model, OhmicExp):
        out = 2.0 * model.K * w * np.exp(-w / model.omega_c)
    else:
        x = angular_time_product(w, model.tau_fs)
        out = 2.0 * model.lam * x / (1.0 + x * x)
    return float(out) if out.ndim == 0 else out


def noise_power(model: SpectralModel, omega: float, temperature: float) -> float:
    """Symmetrized noise power ``S(w) = J(w) coth(w / 2 k_B T)``.

    At ``w = 0`` the analytic limit ``2 J'(0) k_B T`` is returned.
    """
    kT = thermal_wavenumber(temperature)
    if omega < 0:
        raise ValueError("noise power requested at negative frequency")
    if omega == 0:
        return 2.0 * low_frequency_slope(model) * kT
    return j_omega(model, omega) * coth_guarded(omega / (2.0 * kT))


def _thermal_excess(model: SpectralModel, omega: float, kT: float) -> float:
    # J(w) (coth(w/2kT) - 1) = 2 J(w) / (exp(w/kT) - 1)
    if omega == 0.0:
        return 2.0 * low_frequency_slope(model) * kT
    x = omega / kT
    if x > 700.0:
        return 0.0
    return 2.0 * j_omega(model, omega) / math.expm1(x)


def _tail_bound(slope: float, kT: float, upper: float) -> float:
    # For w >= upper >= 2a: |g/(w^2-a^2)| <= (8/3) slope / (w expm1(w/kT)),
    # integrated from `upper` to infinity.
    x = upper / kT
    if x > 700.0:
        return 0.0
    return (8.0 / 3.0) * slope * kT * math.exp(-x) / (upper * -math.expm1(-x))


def re_u_at_rabi(model: SpectralModel, delta_b: float, temperature: float,
                 control: QuadratureControl = DEFAULT_QUADRATURE) -> float:
    r"""Real part of the thermal shift integral ``u(z)`` at ``z = i Delta_b``.

    .. math::

        \Re u(i\Delta_b) = \frac12\, \mathrm{PV}\!\int_0^\infty d\omega\,
            \frac{g(\omega)}{\omega^2 - \Delta_b^2},
        \qquad g(\omega) = J(\omega)\,[\coth(\omega/2k_BT) - 1]

    The pole is removed by subtracting ``g(Delta_b)``; because
    ``PV int_0^inf dw / (w^2 - a^2) = 0`` no correction term is needed.  The
    regular integrand is integrated adaptively on ``[0, a]`` and ``[a, W]``
    where ``W`` is pushed out until an analytic bound on the remaining
    thermal tail drops below a tenth of ``abs_tol``; the tail of the
    subtracted constant is added in closed form.

    Raises
    ------
    QuadratureError
        If the adaptive integration fails to converge within the panel budget.
    """
    if not delta_b > 0:
        raise ValueError(f"Delta_b must be > 0, got {delta_b!r}")
    kT = thermal_wavenumber(temperature)
    a = delta_b
    g_a = _thermal_excess(model, a, kT)
    h = 1e-4 * a
    dg_a = (_thermal_excess(model, a + h, kT) - _thermal_excess(model, a - h, kT)) / (2 * h)

    def integrand(w):
        d = w - a
        if abs(d) < 1e-7 * a:
            return dg_a / (2.0 * a)
        return (_thermal_excess(model, w, kT) - g_a) / (d * (w + a))

    slope = low_frequency_slope(model)
    upper = max(2.0 * a, 10.0 * kT)
    while _tail_bound(slope, kT, upper) > 0.1 * control.abs_tol:
        upper *= 1.5

    breaks = [0.0, a, upper]
    # a cold bath concentrates g near zero; give the integrator a panel there
    if 10.0 * kT < a:
        breaks.insert(1, 10.0 * kT)

    total = 0.0
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        value, err, info, *rest = integrate.quad(
            integrand, lo, hi, epsabs=control.abs_tol, epsrel=control.rel_tol,
            limit=control.panel_budget, full_output=1)
        if rest and err > max(10 * control.abs_tol, 10 * control.rel_tol * abs(value)):
            raise QuadratureError(
                f"thermal shift integral on [{lo:.4g}, {hi:.4g}] cm^-1 did not converge",
                err)
        total += value

    const_tail = -g_a * math.log((upper + a) / (upper - a)) / (2.0 * a)
    return 0.5 * (total + const_tail)
