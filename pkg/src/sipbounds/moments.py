"""Closed-form output moments of the scalar channel.

Every entry a bound needs is derived mechanically through the Wick engine
(single source of truth, cross-checked against Monte Carlo); the one formula
the engine does not own is the kurtosis-parameterized variance of |Y|^2,
which also covers non-Gaussian fading and noise.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .model import ChannelSpec, SignalSpec
from .wick import Poly, poly_conjugate, poly_expectation, poly_product, wick_moment

# variable indices of the zero-mean Gaussian triple (X, H, Z)
_X, _H, _Z = 0, 1, 2


@dataclass(frozen=True)
class MomentSet:
    """Second/fourth-order output moments used by the scalar bounds.

    The mixed moments are centered: ``e_y_abs_y_sq`` is
    E[Y|Y|^2] - E[Y]E[|Y|^2]; the data cross-moments need no centering since
    X is zero-mean.  ``std_errors`` carries per-field standard errors when
    the set was estimated by Monte Carlo (None for closed-form sets).
    """

    var_abs_y_sq: float
    var_y: float
    e_y_abs_y_sq: complex
    e_xconj_abs_y_sq: complex
    e_xconj_y: complex
    std_errors: dict[str, float] | None = field(default=None)
    n_samples: int | None = None

    FIELDS = ("var_abs_y_sq", "var_y", "e_y_abs_y_sq", "e_xconj_abs_y_sq", "e_xconj_y")


def _channel_cov_and_output(channel: ChannelSpec, signal: SignalSpec) -> tuple[np.ndarray, Poly]:
    """Diagonal covariance of (X, H, Z) and the output Y as a polynomial in
    them, with the pilot and fading mean folded into the coefficients."""
    cov = np.diag([signal.data_power, channel.fading_var, 1.0]).astype(complex)
    hbar = complex(channel.fading_mean)
    xbar = complex(signal.pilot)
    y: Poly = {
        ((_X, False), (_H, False)): 1.0 + 0j,
        ((_Z, False),): 1.0 + 0j,
    }
    if hbar != 0:
        y[((_X, False),)] = hbar
    if xbar != 0:
        y[((_H, False),)] = xbar
    if hbar * xbar != 0:
        y[()] = hbar * xbar
    return cov, y


def variance_of_output_power_kurtosis(
    pilot_power: float, data_power: float, fading_kurtosis: float, noise_kurtosis: float
) -> float:
    """var(|Y|^2) for zero-mean fading, parameterized by the kurtoses of the
    fading and noise (unit fading power and unit noise variance)."""
    a, p = pilot_power, data_power
    kh, kz = fading_kurtosis, noise_kurtosis
    return (kh - 1.0) * a * a + (2.0 * kh - 1.0) * p * (2.0 * a + p) + 2.0 * (a + p) + kz - 1.0


def fading_fourth_moment(channel: ChannelSpec) -> float:
    """E[|fading_mean + H|^4], evaluated by the Wick engine.

    This is the quantity that replaces the fading kurtosis throughout the
    zero-mean formulas when a line-of-sight component is present.
    """
    if not channel.gaussian_fading:
        raise ValueError("fourth moment of non-Gaussian fading is not available in closed form")
    mono = [(0, False), (0, False), (0, True), (0, True)]
    value = wick_moment([channel.fading_mean], [[channel.fading_var]], mono)
    return float(value.real)


def _zero_mean_output_power_variance(channel: ChannelSpec, signal: SignalSpec) -> float:
    s2 = channel.fading_var
    if s2 == 1.0:
        return variance_of_output_power_kurtosis(
            signal.pilot_power, signal.data_power,
            channel.fading_kurtosis, channel.noise_kurtosis)
    # same identity without the unit-fading-power normalization
    a, p = signal.pilot_power, signal.data_power
    e_s4 = a * a + 4.0 * a * p + 2.0 * p * p
    return (channel.fading_kurtosis * s2 * s2 * e_s4 - (s2 * (a + p)) ** 2
            + 2.0 * s2 * (a + p) + channel.noise_kurtosis - 1.0)


def output_power_variance(channel: ChannelSpec, signal: SignalSpec) -> float:
    """var(|Y|^2) for the scalar channel.

    Zero-mean fading takes the kurtosis-parameterized route (any kurtosis
    >= 1 admitted); fading with a mean requires gaussian_fading and goes
    through the Wick engine, with the excess noise kurtosis entering
    additively exactly as in the zero-mean formula.
    """
    if channel.fading_mean == 0:
        return _zero_mean_output_power_variance(channel, signal)
    if not channel.gaussian_fading:
        raise ValueError("line-of-sight moments require gaussian_fading")
    cov, y = _channel_cov_and_output(channel, signal)
    abs_y_sq = poly_product(y, poly_conjugate(y))
    m2 = poly_expectation(cov, abs_y_sq).real
    m4 = poly_expectation(cov, poly_product(abs_y_sq, abs_y_sq)).real
    # engine assumes Gaussian noise; non-Gaussian circular noise shifts the
    # fourth moment by (kurtosis - 2) and nothing else
    return m4 - m2 * m2 + (channel.noise_kurtosis - 2.0)


def closed_form_moments(channel: ChannelSpec, signal: SignalSpec) -> MomentSet:
    """Full MomentSet via the Wick engine; requires gaussian_fading.

    For zero-mean fading var(|Y|^2) is reported from the kurtosis formula
    (the engine value agrees to machine precision; the formula also admits
    the noise kurtosis directly).
    """
    if not channel.gaussian_fading:
        raise ValueError("closed-form moment set requires gaussian_fading "
                         "(supply a Monte-Carlo MomentSet instead)")
    cov, y = _channel_cov_and_output(channel, signal)
    y_conj = poly_conjugate(y)
    abs_y_sq = poly_product(y, y_conj)

    e_y = poly_expectation(cov, y)
    e_abs_y_sq = poly_expectation(cov, abs_y_sq).real
    var_y = poly_expectation(cov, poly_product(y, y_conj)).real - abs(e_y) ** 2

    e_y_ay2 = poly_expectation(cov, poly_product(y, abs_y_sq)) - e_y * e_abs_y_sq

    x_conj: Poly = {((_X, True),): 1.0 + 0j}
    e_xc_ay2 = poly_expectation(cov, poly_product(x_conj, abs_y_sq))
    e_xc_y = poly_expectation(cov, poly_product(x_conj, y))

    if channel.fading_mean == 0:
        var_ay2 = _zero_mean_output_power_variance(channel, signal)
    else:
        m4 = poly_expectation(cov, poly_product(abs_y_sq, abs_y_sq)).real
        var_ay2 = m4 - e_abs_y_sq ** 2 + (channel.noise_kurtosis - 2.0)

    return MomentSet(
        var_abs_y_sq=var_ay2,
        var_y=var_y,
        e_y_abs_y_sq=e_y_ay2,
        e_xconj_abs_y_sq=e_xc_ay2,
        e_xconj_y=e_xc_y,
    )
