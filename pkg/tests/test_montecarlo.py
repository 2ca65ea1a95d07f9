"""Sampler determinism, estimator harness, standard-error behavior, reports."""
import math

import numpy as np
import pytest
from scipy.stats import chi2

from sipbounds import (
    ChannelSpec,
    EstimatorCoeffs,
    McConfig,
    SignalSpec,
    closed_form_moments,
    empirical_estimator_variance,
    estimate_moments,
    hybrid_estimator_coeffs,
    iter_channel_batches,
    optimal_pilot_share,
    output_power_variance,
    rayleigh_channel,
    rician_channel,
    sample_channel,
    scalar_estimator_coeff,
    validate_bound,
)

RAYLEIGH = rayleigh_channel()


def test_config_validation():
    with pytest.raises(ValueError):
        McConfig(seed=-1)
    with pytest.raises(ValueError):
        McConfig(seed=1, n_samples=0)
    with pytest.raises(ValueError):
        McConfig(seed=1, n_samples=10, batch_count=1)
    with pytest.raises(ValueError):
        McConfig(seed=1, n_samples=8, batch_count=16)


def test_sampler_is_deterministic():
    cfg = McConfig(seed=123, n_samples=10_000, batch_count=4)
    sig = SignalSpec(1.0, 0.5)
    x1, y1 = sample_channel(RAYLEIGH, sig, cfg)
    x2, y2 = sample_channel(RAYLEIGH, sig, cfg)
    assert np.array_equal(x1, x2) and np.array_equal(y1, y2)
    assert len(x1) == 10_000


def test_batch_split_covers_all_samples():
    cfg = McConfig(seed=1, n_samples=1003, batch_count=7)
    sizes = [len(x) for x, _ in iter_channel_batches(RAYLEIGH, SignalSpec(1.0, 0.5), cfg)]
    assert sum(sizes) == 1003
    assert max(sizes) - min(sizes) <= 1


def test_rejects_unsamplable_channels():
    non_gauss = ChannelSpec(fading_kurtosis=3.0, gaussian_fading=False)
    with pytest.raises(ValueError, match="sampler"):
        sample_channel(non_gauss, SignalSpec(1.0, 0.5), McConfig(seed=1, n_samples=100))
    heavy_noise = ChannelSpec(noise_kurtosis=4.0)
    with pytest.raises(ValueError, match="noise"):
        sample_channel(heavy_noise, SignalSpec(1.0, 0.5), McConfig(seed=1, n_samples=100))


def test_pure_noise_output_variance():
    _, y = sample_channel(RAYLEIGH, SignalSpec(0.0, 0.0),
                          McConfig(seed=2, n_samples=400_000))
    # var(Y) = 1 for unit circular noise; SE of the variance ~ sqrt(1/N)
    assert np.var(y) == pytest.approx(1.0, abs=4 / math.sqrt(len(y)))


def test_deterministic_channel_cross_moment():
    ch = rician_channel(1.0)
    sig = SignalSpec(1.0, 0.0)
    ms = estimate_moments(iter_channel_batches(ch, sig, McConfig(seed=3, n_samples=200_000)))
    # E[X^* Y] = mean * data power = 1
    assert abs(ms.e_xconj_y - 1.0) <= 4 * ms.std_errors["e_xconj_y"]


def test_moments_match_closed_form_rayleigh():
    sig = SignalSpec(1.0, 0.5)
    cf = closed_form_moments(RAYLEIGH, sig)
    ms = estimate_moments(iter_channel_batches(RAYLEIGH, sig,
                                               McConfig(seed=8, n_samples=1_000_000)))
    assert abs(ms.var_abs_y_sq - 5.5) <= 4 * ms.std_errors["var_abs_y_sq"]
    for name in ("var_abs_y_sq", "var_y", "e_y_abs_y_sq", "e_xconj_abs_y_sq", "e_xconj_y"):
        assert abs(getattr(cf, name) - getattr(ms, name)) <= 4 * ms.std_errors[name], name


def test_estimator_variance_zero_coefficient():
    sig = SignalSpec(1.0, 0.5)
    est = empirical_estimator_variance(
        iter_channel_batches(RAYLEIGH, sig, McConfig(seed=4, n_samples=200_000)),
        EstimatorCoeffs(alpha=0j))
    assert abs(est.value - sig.data_power) <= 4 * est.std_error


def test_estimator_variance_at_optimum():
    sig = SignalSpec(1.0, 0.5)
    alpha = scalar_estimator_coeff(RAYLEIGH, sig)
    target = sig.data_power * (
        1.0 - sig.data_power * sig.pilot_power / output_power_variance(RAYLEIGH, sig))
    est = empirical_estimator_variance(
        iter_channel_batches(RAYLEIGH, sig, McConfig(seed=5, n_samples=400_000)),
        EstimatorCoeffs(alpha=alpha))
    assert abs(est.value - target) <= 4 * est.std_error


def test_estimator_variance_convexity_in_alpha():
    sig = SignalSpec(1.0, 0.5)
    alpha = scalar_estimator_coeff(RAYLEIGH, sig)
    cfg = McConfig(seed=6, n_samples=200_000)
    at_opt = empirical_estimator_variance(
        iter_channel_batches(RAYLEIGH, sig, cfg), EstimatorCoeffs(alpha=alpha))
    doubled = empirical_estimator_variance(
        iter_channel_batches(RAYLEIGH, sig, cfg), EstimatorCoeffs(alpha=2 * alpha))
    assert doubled.value > at_opt.value


def test_hybrid_estimator_variance():
    ch = rician_channel(0.4)
    sig = SignalSpec(1.0, 0.3)
    coeffs = hybrid_estimator_coeffs(ch, sig)
    ms = closed_form_moments(ch, sig)
    # closed-form minimum of the two-regressor quadratic
    import numpy.linalg as la

    c = np.array([[ms.var_abs_y_sq, np.conj(ms.e_y_abs_y_sq)],
                  [ms.e_y_abs_y_sq, ms.var_y]])
    phi = np.array([np.conj(ms.e_xconj_abs_y_sq), np.conj(ms.e_xconj_y)])
    target = sig.data_power - float(np.real(phi @ la.solve(c, np.conj(phi))))
    est = empirical_estimator_variance(
        iter_channel_batches(ch, sig, McConfig(seed=7, n_samples=400_000)), coeffs)
    assert abs(est.value - target) <= 4 * est.std_error


def test_standard_error_scaling():
    sig = SignalSpec(1.0, 0.5)
    ratios = []
    for seed in range(10):
        se_n = estimate_moments(iter_channel_batches(
            RAYLEIGH, sig, McConfig(seed=seed, n_samples=50_000))).std_errors["var_abs_y_sq"]
        se_2n = estimate_moments(iter_channel_batches(
            RAYLEIGH, sig, McConfig(seed=seed + 100, n_samples=100_000))).std_errors["var_abs_y_sq"]
        ratios.append(se_n / se_2n)
    assert np.mean(ratios) == pytest.approx(math.sqrt(2.0), rel=0.2)


def test_seed_independence_chi_square():
    sig = SignalSpec(1.0, 0.5)
    estimates, errors = [], []
    for seed in range(10):
        ms = estimate_moments(iter_channel_batches(
            RAYLEIGH, sig, McConfig(seed=1000 + seed, n_samples=100_000)))
        estimates.append(ms.var_abs_y_sq)
        errors.append(ms.std_errors["var_abs_y_sq"])
    z = (np.asarray(estimates) - np.mean(estimates)) / np.asarray(errors)
    stat = float(np.sum(z**2))
    assert stat < chi2.ppf(0.99, len(z) - 1)
    assert stat > chi2.ppf(1e-4, len(z) - 1)


def test_single_batch_rejected():
    with pytest.raises(ValueError, match="two batches"):
        estimate_moments([(np.zeros(4, complex), np.ones(4, complex))])


def test_validation_report_passes_and_serializes():
    sig = SignalSpec(1.0, optimal_pilot_share(RAYLEIGH, 1.0))
    rep = validate_bound(RAYLEIGH, sig, McConfig(seed=1, n_samples=400_000))
    assert rep.all_passed
    text = rep.to_text()
    lines = text.splitlines()
    assert lines[0] == "quantity, analytic, mc, se, pass"
    assert len(lines) == 9
    assert text.endswith("\n")
    for line in lines[1:]:
        assert line.split(", ")[-1] in ("pass", "fail")


def test_validation_report_deterministic_bytes():
    sig = SignalSpec(1.0, 0.4)
    cfg = McConfig(seed=42, n_samples=100_000)
    a = validate_bound(RAYLEIGH, sig, cfg).to_text()
    b = validate_bound(RAYLEIGH, sig, cfg).to_text()
    assert a.encode() == b.encode()


def test_validation_trivial_point():
    rep = validate_bound(RAYLEIGH, SignalSpec(1.0, 0.0),
                         McConfig(seed=9, n_samples=100_000))
    rows = {r.quantity: r for r in rep.rows}
    assert rows["superimposed_bound"].analytic == 0.0
    assert rep.all_passed


def test_validation_rician_with_los():
    ch = rician_channel(0.5)
    rep = validate_bound(ch, SignalSpec(1.0, 0.3), McConfig(seed=13, n_samples=400_000))
    assert rep.all_passed
