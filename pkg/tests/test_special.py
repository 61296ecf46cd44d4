import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dimer_coherence.special import (
    EULER_GAMMA,
    SeriesControl,
    coth_guarded,
    gamma_real,
    re_digamma_imaginary,
)
from oracles import gamma_integral, re_digamma_imag


def test_gamma_known_values():
    assert gamma_real(1.0) == pytest.approx(1.0, rel=1e-14)
    assert gamma_real(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    # integral-definition oracle: 1.17565505114681
    assert gamma_real(0.79) == pytest.approx(gamma_integral(0.79), rel=1e-10)
    assert gamma_real(0.79) == pytest.approx(1.17565505114681, rel=1e-12)


@pytest.mark.parametrize("x", [0.05, 0.3, 0.79, 1.7, 3.25, 4.9])
def test_gamma_against_integral(x):
    assert gamma_real(x) == pytest.approx(gamma_integral(x), rel=1e-10)


@pytest.mark.parametrize("x", [0.0, -0.5, -2.0])
def test_gamma_rejects_nonpositive(x):
    with pytest.raises(ValueError):
        gamma_real(x)


@given(st.floats(min_value=1e-3, max_value=5.0))
def test_gamma_recurrence(x):
    assert gamma_real(x + 1) == pytest.approx(x * gamma_real(x), rel=1e-10)


def test_digamma_small_argument_limit():
    assert re_digamma_imaginary(1e-6) == pytest.approx(-EULER_GAMMA, abs=1e-9)


def test_digamma_frozen_values():
    # mpmath oracle values
    assert re_digamma_imaginary(0.5995) == pytest.approx(-0.244627975796318, abs=1e-9)
    assert re_digamma_imaginary(0.1667) == pytest.approx(-0.544591519714664, abs=1e-9)


def test_digamma_against_oracle_logspace():
    ys = np.logspace(-3, math.log10(50.0), 50)
    err = max(abs(re_digamma_imaginary(y) - re_digamma_imag(y)) for y in ys)
    assert err < 1e-8


def test_digamma_series_asymptotic_seam():
    below, above = re_digamma_imaginary(8.0), re_digamma_imaginary(8.0 + 1e-12)
    assert below == pytest.approx(above, abs=1e-10)


def test_digamma_rejects_nonpositive():
    with pytest.raises(ValueError):
        re_digamma_imaginary(0.0)


def test_series_control_validation():
    with pytest.raises(ValueError):
        SeriesControl(tolerance=1e-3)
    with pytest.raises(ValueError):
        SeriesControl(max_terms=10)
    with pytest.raises(ValueError):
        re_digamma_imaginary(7.9, SeriesControl(tolerance=1e-15, max_terms=10_000))


def test_coth_values():
    assert coth_guarded(1.883) == pytest.approx(1.04738562697419, rel=1e-12)
    assert coth_guarded(50.0) == 1.0
    assert coth_guarded(1e-6) == pytest.approx(1e6, rel=1e-12)
    with pytest.raises(ValueError):
        coth_guarded(0.0)


def test_coth_seam_continuous():
    x = 1e-4
    assert coth_guarded(x * (1 - 1e-12)) == pytest.approx(1 / math.tanh(x), rel=1e-10)


def test_coth_array():
    xs = np.array([1e-6, 0.1, 1.0, 10.0])
    np.testing.assert_allclose(coth_guarded(xs)[1:], 1 / np.tanh(xs[1:]), rtol=1e-14)


@given(st.floats(min_value=1e-8, max_value=30.0), st.floats(min_value=1e-6, max_value=5.0))
def test_coth_monotone_and_above_one(x, dx):
    assert coth_guarded(x) > 1.0 or x > 18
    assert coth_guarded(x + dx) <= coth_guarded(x)
