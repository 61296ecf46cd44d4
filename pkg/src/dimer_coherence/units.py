"""Physical constants and unit conversions.

Every energy, frequency and rate inside the package is a float in cm^-1
(energy divided by hc).  Times are floats in femtoseconds and temperatures
floats in kelvin.  Conversion to rad/s or seconds happens only here.
"""

from __future__ import annotations

import math

SPEED_OF_LIGHT = 2.99792458e8  # m/s
KB_CM_PER_K = 0.69503480  # k_B / (h c), cm^-1 per kelvin

_C_CM_PER_S = SPEED_OF_LIGHT * 100.0
RAD_PER_S_PER_CM = 2.0 * math.pi * _C_CM_PER_S
FS = 1e-15


def angular_frequency(nu):
    """Angular frequency in rad/s of a wavenumber ``nu`` given in cm^-1."""
    return RAD_PER_S_PER_CM * nu


def wavenumber_from_angular(omega):
    """Inverse of :func:`angular_frequency`."""
    return omega / RAD_PER_S_PER_CM


def thermal_wavenumber(temperature: float) -> float:
    """Thermal energy k_B T expressed in cm^-1.

    Raises
    ------
    ValueError
        If ``temperature`` is not strictly positive.
    """
    if not temperature > 0:
        raise ValueError(f"temperature must be > 0 K, got {temperature!r}")
    return KB_CM_PER_K * temperature


def temperature_from_wavenumber(nu: float) -> float:
    """Temperature in kelvin whose k_B T equals ``nu`` cm^-1."""
    return nu / KB_CM_PER_K


def rate_to_lifetime(gamma: float) -> float:
    """Lifetime 1/gamma in fs for a rate ``gamma`` in (angular) cm^-1."""
    if not gamma > 0:
        raise ValueError(f"rate must be > 0, got {gamma!r}")
    return 1.0 / (RAD_PER_S_PER_CM * gamma) / FS


def lifetime_to_rate(t_fs: float) -> float:
    """Rate in cm^-1 whose inverse is ``t_fs`` femtoseconds."""
    if not t_fs > 0:
        raise ValueError(f"lifetime must be > 0 fs, got {t_fs!r}")
    return 1.0 / (RAD_PER_S_PER_CM * t_fs * FS)


def period_from_rabi(omega: float) -> float:
    """Oscillation period 2*pi/Omega in fs for a Rabi frequency in cm^-1."""
    if not omega > 0:
        raise ValueError(f"Rabi frequency must be > 0, got {omega!r}")
    return 2.0 * math.pi * rate_to_lifetime(omega)


def angular_time_product(nu, t_fs):
    """Dimensionless product omega*t for ``nu`` in cm^-1 and ``t_fs`` in fs."""
    return angular_frequency(nu) * (t_fs * FS)
