import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dimer_coherence.dynamics import (
    coherent_amplitude,
    equilibrium_difference,
    evolve,
    persistence,
    population_difference,
)
from dimer_coherence.rates import DimerSystem, compute_rates
from dimer_coherence.spectral import Debye, OhmicExp
from dimer_coherence.units import angular_frequency


@pytest.fixture
def presets(fmo77, fmo277, pc645):
    return [(s, compute_rates(s)) for s in (fmo77, fmo277, pc645)]


def test_initial_condition(presets):
    for system, rates in presets:
        traj = evolve(rates, system, 1000.0, 2048)
        assert traj.t_fs[0] == 0.0
        assert (traj.P[0], traj.rho1[0], traj.rho2[0]) == (1.0, 1.0, 0.0)


def test_normalization_exact(presets):
    for system, rates in presets:
        traj = evolve(rates, system, 2000.0, 4001)
        assert np.all(traj.rho1 + traj.rho2 == 1.0)
        assert np.all((traj.rho1 >= 0) & (traj.rho1 <= 1) & (traj.rho2 >= 0) & (traj.rho2 <= 1))
        np.testing.assert_allclose(traj.rho1 - traj.rho2, traj.P, atol=1e-15)


def test_fmo77_oscillation_period(fmo77):
    rates = compute_rates(fmo77)
    traj = evolve(rates, fmo77, 1000.0, 20001)
    rho1 = traj.rho1
    minima = np.where((rho1[1:-1] < rho1[:-2]) & (rho1[1:-1] < rho1[2:]))[0] + 1
    t_min = traj.t_fs[minima]
    # first dip at about half the 163 fs period, then one dip per period
    assert t_min[0] == pytest.approx(163 / 2, rel=0.05)
    assert np.diff(t_min[:3]).mean() == pytest.approx(163, rel=0.03)


def test_long_time_limit(fmo77):
    rates = compute_rates(fmo77)
    p_inf = equilibrium_difference(rates, fmo77)
    assert p_inf < 0
    assert population_difference(rates, fmo77, 1e5) == pytest.approx(p_inf, abs=1e-12)


def test_initial_slope(presets):
    for system, rates in presets:
        incoherent = system.eps**2 / rates.delta_b**2
        expected = -angular_frequency(rates.gamma_r) * 1e-15 * (
            incoherent - equilibrium_difference(rates, system))
        h = 1e-4
        d1 = (population_difference(rates, system, h) - 1.0) / h
        d2 = (population_difference(rates, system, h / 2) - 1.0) / (h / 2)
        assert 2 * d2 - d1 == pytest.approx(expected, rel=1e-6)


def test_zero_damping_limit(fmo77):
    rates = dataclasses.replace(compute_rates(fmo77), gamma=0.0, gamma_r=0.0)
    t = np.linspace(0, 500, 101)
    b2 = rates.delta_b**2
    expected = fmo77.eps**2 / b2 + rates.delta_eff**2 / b2 * np.cos(angular_frequency(rates.rabi) * t * 1e-15)
    np.testing.assert_allclose(population_difference(rates, fmo77, t), expected, atol=1e-14)
    assert persistence(rates, 0.1).time_fs == float("inf")


@settings(max_examples=100, deadline=None)
@given(
    eps_ratio=st.floats(0.0, 0.95),
    delta=st.floats(20.0, 400.0),
    K=st.floats(0.01, 0.3),
    wc=st.floats(50.0, 1000.0),
    T=st.floats(5.0, 400.0),
)
def test_bounded_random_draws(eps_ratio, delta, K, wc, T):
    system = DimerSystem(eps_ratio * 2 * delta, delta, T, OhmicExp(K, wc))
    rates = compute_rates(system)
    traj = evolve(rates, system, 2000.0, 1024)
    assert np.all(np.abs(traj.P) <= 1.0)


def test_evolve_rejects_bad_grid(fmo77):
    rates = compute_rates(fmo77)
    with pytest.raises(ValueError):
        evolve(rates, fmo77, 1000.0, 1)
    with pytest.raises(ValueError):
        evolve(rates, fmo77, 0.0, 10)


def test_persistence_presets(fmo77, fmo277, pc645):
    assert persistence(compute_rates(fmo77), 0.015).time_fs == pytest.approx(600, rel=0.05)
    assert persistence(compute_rates(fmo277), 0.011).time_fs == pytest.approx(300, rel=0.05)
    assert persistence(compute_rates(pc645), 0.01).time_fs == pytest.approx(400, rel=0.05)


def test_persistence_closed_form(fmo77):
    rates = compute_rates(fmo77)
    report = persistence(rates, 0.015)
    t = report.time_fs * 1e-15
    envelope = coherent_amplitude(rates) * np.exp(-angular_frequency(rates.gamma) * t)
    assert envelope == pytest.approx(0.015, rel=1e-12)


def test_persistence_below_threshold(fmo77):
    rates = compute_rates(fmo77)
    assert persistence(rates, min(0.999, coherent_amplitude(rates) + 1e-3)).time_fs == 0.0
    for bad in (0.0, 1.0, -0.1):
        with pytest.raises(ValueError):
            persistence(rates, bad)


@given(st.floats(0.001, 0.999), st.floats(0.001, 0.999))
def test_persistence_monotone_in_threshold(th_a, th_b):
    rates = compute_rates(DimerSystem(75.0, 87.7, 77.0, OhmicExp(0.105, 166.8)))
    lo, hi = sorted((th_a, th_b))
    assert persistence(rates, hi).time_fs <= persistence(rates, lo).time_fs


@given(st.floats(0.001, 1.0), st.floats(1.0, 10.0))
def test_persistence_monotone_in_gamma(fraction, gamma_scale):
    # The sqrt(1 + (gamma/Omega)^2) factor grows with gamma; monotonicity in gamma
    # holds for thresholds up to exp(-0.1534) (Deff/Db)^2, where
    # x^2/(1+x^2) - ln(1+x^2)/2 peaks at x = 1.
    rates = compute_rates(DimerSystem(75.0, 87.7, 77.0, OhmicExp(0.105, 166.8)))
    threshold = fraction * 0.857 * (rates.delta_eff / rates.delta_b) ** 2
    faster = dataclasses.replace(rates, gamma=rates.gamma * gamma_scale)
    assert persistence(faster, threshold).time_fs <= persistence(rates, threshold).time_fs * (1 + 1e-12)


def test_persistence_can_grow_with_gamma_near_amplitude():
    rates = compute_rates(DimerSystem(75.0, 87.7, 77.0, OhmicExp(0.105, 166.8)))
    faster = dataclasses.replace(rates, gamma=2 * rates.gamma)
    threshold = 0.5 * (coherent_amplitude(rates) + coherent_amplitude(faster))
    assert persistence(rates, threshold).time_fs == 0.0 < persistence(faster, threshold).time_fs
