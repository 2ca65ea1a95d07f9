"""Closed-form channel moments against hand values, the engine, and Monte Carlo."""
import math

import numpy as np
import pytest

from sipbounds import (
    ChannelSpec,
    McConfig,
    SignalSpec,
    closed_form_moments,
    estimate_moments,
    fading_fourth_moment,
    iter_channel_batches,
    output_power_variance,
    rayleigh_channel,
    rician_channel,
    variance_of_output_power_kurtosis,
)
from sipbounds.wick import poly_conjugate, poly_expectation, poly_product

RAYLEIGH = rayleigh_channel()


def engine_output_power_variance(channel, signal):
    """var(|Y|^2) assembled directly from the polynomial layer (Gaussian noise)."""
    cov = np.diag([signal.data_power, channel.fading_var, 1.0]).astype(complex)
    y = {
        ((0, False), (1, False)): 1.0 + 0j,
        ((2, False),): 1.0 + 0j,
        ((1, False),): complex(signal.pilot),
        ((0, False),): complex(channel.fading_mean),
    }
    if channel.fading_mean:
        y[()] = complex(channel.fading_mean) * signal.pilot
    ay2 = poly_product(y, poly_conjugate(y))
    m2 = poly_expectation(cov, ay2).real
    m4 = poly_expectation(cov, poly_product(ay2, ay2)).real
    return m4 - m2 * m2


def test_rayleigh_reference_point():
    ms = closed_form_moments(RAYLEIGH, SignalSpec(1.0, 0.5))
    assert ms.var_abs_y_sq == pytest.approx(5.5, abs=1e-14)
    assert ms.e_xconj_abs_y_sq == pytest.approx(0.5 * math.sqrt(0.5), abs=1e-14)
    assert ms.var_y == pytest.approx(2.0, abs=1e-14)
    assert ms.e_y_abs_y_sq == 0
    assert ms.e_xconj_y == 0


def test_pure_noise_variance():
    # no signal at all: var(|Z|^2) = kurtosis - 1
    ms = closed_form_moments(RAYLEIGH, SignalSpec(0.0, 0.0))
    assert ms.var_abs_y_sq == pytest.approx(1.0)
    assert ms.var_y == pytest.approx(1.0)


def test_all_pilot_kills_data_cross_moment():
    ms = closed_form_moments(RAYLEIGH, SignalSpec(2.0, 1.0))
    assert ms.e_xconj_abs_y_sq == 0
    assert ms.e_xconj_y == 0


def test_non_gaussian_noise_kurtosis_enters_additively():
    heavy = ChannelSpec(fading_mean=0.0, fading_var=1.0, noise_kurtosis=3.5)
    sig = SignalSpec(1.0, 0.5)
    base = output_power_variance(RAYLEIGH, sig)
    assert output_power_variance(heavy, sig) == pytest.approx(base + 1.5)


def test_kurtosis_formula_matches_engine_on_grid():
    # zero-mean Gaussian fading: formula vs mechanical derivation, 1e-12 relative
    for rho in (0.0, 0.1, 1.0, 7.0, 30.0, 100.0):
        for nu in (0.0, 0.2, 0.5, 0.9, 1.0):
            sig = SignalSpec(rho, nu)
            formula = output_power_variance(RAYLEIGH, sig)
            engine = engine_output_power_variance(RAYLEIGH, sig)
            assert engine == pytest.approx(formula, rel=1e-12)


def test_los_variance_equals_kurtosis_formula_with_fourth_moment():
    # replacing the kurtosis by E[|mean+H|^4] reproduces the engine value
    for lam in (0.25, 0.5, 0.9):
        ch = rician_channel(lam)
        for rho, nu in ((1.0, 0.3), (5.0, 0.7)):
            sig = SignalSpec(rho, nu)
            k4 = fading_fourth_moment(ch)
            replaced = variance_of_output_power_kurtosis(
                sig.pilot_power, sig.data_power, k4, 2.0)
            assert output_power_variance(ch, sig) == pytest.approx(replaced, rel=1e-12)


def test_fading_fourth_moment_values():
    assert fading_fourth_moment(RAYLEIGH) == pytest.approx(2.0)
    assert fading_fourth_moment(rician_channel(1.0)) == pytest.approx(1.0)
    assert fading_fourth_moment(rician_channel(0.5)) == pytest.approx(1.75, abs=1e-14)


def test_fading_fourth_moment_monte_carlo_oracle():
    ch = rician_channel(0.5)
    rng = np.random.default_rng(2024)
    n = 10_000_000
    h = ch.fading_mean + (rng.standard_normal(n) + 1j * rng.standard_normal(n)) * math.sqrt(
        ch.fading_var / 2.0)
    mc = np.mean(np.abs(h) ** 4)
    se = np.std(np.abs(h) ** 4) / math.sqrt(n)
    assert abs(fading_fourth_moment(ch) - mc) < 4 * se


def test_variance_is_quadratic_in_the_power_pair():
    # third difference along (a, p) -> (t a, t p) vanishes: total degree 2
    rng = np.random.default_rng(5)
    for _ in range(20):
        a, p = rng.uniform(0.1, 5.0, size=2)
        kh, kz = rng.uniform(1.0, 6.0, size=2)
        v = [variance_of_output_power_kurtosis(t * a, t * p, kh, kz) for t in (0, 1, 2, 3)]
        third = v[3] - 3 * v[2] + 3 * v[1] - v[0]
        assert abs(third) < 1e-9 * max(map(abs, v))
        # doubling transform from the quadratic coefficients
        c0 = v[0]
        c2 = (v[2] - 2 * v[1] + v[0]) / 2
        c1 = v[1] - c0 - c2
        assert v[2] == pytest.approx(c0 + 2 * c1 + 4 * c2, rel=1e-12)


def test_moments_match_monte_carlo_rician():
    ch = rician_channel(0.5)
    sig = SignalSpec(1.0, 0.3)
    cf = closed_form_moments(ch, sig)
    mc = estimate_moments(iter_channel_batches(ch, sig, McConfig(seed=11, n_samples=400_000)))
    for name in ("var_abs_y_sq", "var_y", "e_y_abs_y_sq", "e_xconj_abs_y_sq", "e_xconj_y"):
        diff = abs(getattr(cf, name) - getattr(mc, name))
        assert diff <= 4 * mc.std_errors[name], name


def test_closed_form_requires_gaussian_fading():
    ch = ChannelSpec(fading_mean=0.0, fading_var=1.0, fading_kurtosis=3.0,
                     gaussian_fading=False)
    with pytest.raises(ValueError, match="gaussian_fading"):
        closed_form_moments(ch, SignalSpec(1.0, 0.5))
    # but the kurtosis-parameterized variance is fine
    v = output_power_variance(ch, SignalSpec(1.0, 0.5))
    assert v == pytest.approx(variance_of_output_power_kurtosis(0.5, 0.5, 3.0, 2.0))


def test_los_without_gaussian_fading_rejected():
    ch = ChannelSpec(fading_mean=0.5, fading_var=0.75, fading_kurtosis=3.0,
                     gaussian_fading=False)
    with pytest.raises(ValueError, match="gaussian_fading"):
        output_power_variance(ch, SignalSpec(1.0, 0.5))


def test_channel_spec_validation():
    with pytest.raises(ValueError):
        ChannelSpec(fading_var=-0.1)
    with pytest.raises(ValueError):
        ChannelSpec(fading_kurtosis=0.5)
    with pytest.raises(ValueError):
        ChannelSpec(noise_kurtosis=0.0)
    with pytest.raises(ValueError):
        ChannelSpec(fading_kurtosis=3.0, gaussian_fading=True)
    with pytest.raises(ValueError):
        SignalSpec(-1.0, 0.5)
    with pytest.raises(ValueError):
        SignalSpec(1.0, 1.5)


def test_rician_preset_normalization():
    for lam in (0.0, 0.3, 1.0):
        ch = rician_channel(lam)
        assert ch.is_normalized
        assert abs(ch.fading_mean) ** 2 == pytest.approx(lam)
