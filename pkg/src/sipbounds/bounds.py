"""Scalar (single-antenna, fast-fading) mutual-information lower bounds.

Three bounds, all built from a linear-MMSE estimate of the data symbol from
functions of the channel output:

* ``superimposed_pilot_bound`` estimates X from |Y|^2; positive whenever both
  a pilot and data power are present, even with zero-mean fading.
* ``medard_bound`` estimates X from Y; the classical worst-case-noise bound,
  positive only with a line-of-sight component and needing no pilot.
* ``hybrid_bound`` uses both observables with jointly optimal coefficients
  and dominates the other two everywhere.

Power-split optimization for the superimposed bound is closed-form
(``optimal_pilot_share``); with line of sight it is numeric.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConsistencyError
from .model import ChannelSpec, SignalSpec
from .moments import MomentSet, closed_form_moments, output_power_variance
from .optimize import golden_section_max


@dataclass(frozen=True)
class BoundValue:
    """A rate in nats per channel use, tagged with the bound and operating point."""

    rate_nats: float
    bound: str
    params: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not self.rate_nats >= 0.0:
            raise ConsistencyError(
                f"{self.bound} produced a negative rate {self.rate_nats}; "
                "this indicates inconsistent moments, not a valid operating point")

    @property
    def rate_bits(self) -> float:
        return self.rate_nats / math.log(2.0)


@dataclass(frozen=True)
class EstimatorCoeffs:
    """Coefficients of the input estimator: either the single coefficient on
    |Y|^2 or the pair on (|Y|^2 - E[|Y|^2], Y - E[Y])."""

    alpha: complex | None = None
    alpha_vec: tuple[complex, complex] | None = None

    def __post_init__(self):
        if (self.alpha is None) == (self.alpha_vec is None):
            raise ValueError("exactly one of alpha / alpha_vec must be set")


def _require_normalized(channel: ChannelSpec) -> None:
    if not channel.is_normalized:
        raise ValueError(
            "scalar bounds assume unit total fading power "
            f"(got |mean|^2 + var = {channel.fading_power})")


def superimposed_pilot_bound(channel: ChannelSpec, signal: SignalSpec) -> BoundValue:
    """log(var(|Y|^2) / (var(|Y|^2) - P|pilot|^2)) in nats.

    Exactly zero when either power share vanishes.  With a fading mean the
    output-power variance comes from the moment engine (equivalently, the
    fading kurtosis is replaced by the fourth moment of the full gain).
    """
    _require_normalized(channel)
    cross = signal.data_power * signal.pilot_power
    params = {"snr": signal.snr, "pilot_share": signal.pilot_share}
    if cross == 0.0:
        return BoundValue(0.0, "superimposed", params)
    v = output_power_variance(channel, signal)
    margin = v - cross
    if margin <= 0.0:
        raise ConsistencyError(
            f"var(|Y|^2)={v} <= P*pilot_power={cross}; moment supply is inconsistent")
    return BoundValue(-math.log1p(-cross / v), "superimposed", params)


def optimal_pilot_share(channel: ChannelSpec, snr: float) -> float:
    """Closed-form maximizer of the superimposed-pilot bound over the power
    split, for zero-mean fading.

    Evaluated in the cancellation-free form 1/(1 + sqrt(1 - u)) with
    u = kappa_H rho^2 / eta(rho); continuous extension 1/2 at snr = 0.
    """
    if channel.fading_mean != 0:
        raise ValueError("closed-form pilot share requires zero-mean fading")
    if snr < 0:
        raise ValueError(f"snr must be >= 0, got {snr}")
    if snr == 0.0:
        return 0.5
    kh, kz = channel.fading_kurtosis, channel.noise_kurtosis
    eta = (2.0 * kh - 1.0) * snr * snr + 2.0 * snr + kz - 1.0
    u = kh * snr * snr / eta
    return 1.0 / (1.0 + math.sqrt(1.0 - u))


def pilot_share_high_snr_limit(channel: ChannelSpec) -> float:
    """Limit of the optimal pilot share as snr -> inf; in (2 - sqrt(2), 1)
    for every fading kurtosis > 1."""
    kh = channel.fading_kurtosis
    if kh <= 1.0:
        raise ValueError(f"requires fading_kurtosis > 1, got {kh}")
    a = 2.0 - 1.0 / kh
    b = 1.0 - 1.0 / kh
    return a - math.sqrt(a * b)


def superimposed_bound_high_snr_limit(channel: ChannelSpec) -> float:
    """snr -> inf limit of the superimposed-pilot bound at the optimal share,
    from the leading quadratic SNR coefficients (noise kurtosis drops out)."""
    if channel.fading_mean != 0:
        raise ValueError("high-SNR limit requires zero-mean fading")
    kh = channel.fading_kurtosis
    if kh <= 1.0:
        raise ValueError(f"requires fading_kurtosis > 1, got {kh}")
    nu = pilot_share_high_snr_limit(channel)
    return math.log1p(nu * (1.0 - nu) / ((1.0 - kh) * nu * nu - nu + 2.0 * kh - 1.0))


def medard_bound(channel: ChannelSpec, data_power: float) -> BoundValue:
    """Worst-case-noise bound log(1 + |mean|^2 P / (E[|H|^2] P + 1)); zero
    for zero-mean fading, no pilot involved."""
    if data_power < 0:
        raise ValueError(f"data_power must be >= 0, got {data_power}")
    los = abs(channel.fading_mean) ** 2
    rate = math.log1p(los * data_power / (channel.fading_var * data_power + 1.0))
    return BoundValue(rate, "medard", {"data_power": data_power})


def scalar_estimator_coeff(channel: ChannelSpec, signal: SignalSpec) -> complex:
    """Variance-minimizing coefficient on |Y|^2: conj(E[X^*|Y|^2]) / var(|Y|^2)."""
    v = output_power_variance(channel, signal)
    cross = channel.fading_power * signal.data_power * signal.pilot
    return cross / v


def _hybrid_matrix(moments: MomentSet) -> tuple[np.ndarray, np.ndarray]:
    """Covariance of (|Y|^2 - E, Y - E) and the row E[X (.)^H] from a MomentSet."""
    c = np.array(
        [[moments.var_abs_y_sq, np.conj(moments.e_y_abs_y_sq)],
         [moments.e_y_abs_y_sq, moments.var_y]], dtype=complex)
    phi = np.array(
        [np.conj(moments.e_xconj_abs_y_sq), np.conj(moments.e_xconj_y)], dtype=complex)
    return c, phi


def _solve_2x2_psd(c: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve c x = rhs for Hermitian PSD 2x2 c, naming the bad pivot on failure."""
    scale = max(abs(c[0, 0]), abs(c[1, 1]), 1e-300)
    p0 = c[0, 0].real
    if p0 <= 1e-14 * scale:
        raise ConsistencyError(
            f"covariance of the observation vector is singular: pivot 0 "
            f"(var(|Y|^2) = {p0}) is not positive")
    schur = c[1, 1].real - (abs(c[1, 0]) ** 2) / p0
    if schur <= 1e-14 * scale:
        raise ConsistencyError(
            f"covariance of the observation vector is singular: pivot 1 "
            f"(Schur complement = {schur}) is not positive")
    y0 = rhs[0] / p0
    x1 = (rhs[1] - c[1, 0] * y0) / schur
    x0 = y0 - (np.conj(c[1, 0]) / p0) * x1
    return np.array([x0, x1])


def hybrid_estimator_coeffs(
    channel: ChannelSpec, signal: SignalSpec, moments: MomentSet | None = None
) -> EstimatorCoeffs:
    """Jointly optimal coefficients on (|Y|^2 - E, Y - E), via the normal
    equations alpha^T = E[X y^H] cov(y)^{-1}."""
    ms = moments if moments is not None else closed_form_moments(channel, signal)
    c, phi = _hybrid_matrix(ms)
    # alpha^T = phi C^{-1}, i.e. alpha = conj(C^{-1} phi^H) for Hermitian C
    alpha = np.conj(_solve_2x2_psd(c, np.conj(phi)))
    return EstimatorCoeffs(alpha_vec=(complex(alpha[0]), complex(alpha[1])))


def hybrid_bound(
    channel: ChannelSpec, signal: SignalSpec, moments: MomentSet | None = None
) -> BoundValue:
    """log(P / (P - E[X y^H] cov(y)^{-1} E[X^* y])) with the two-component
    observation y = (|Y|^2 - E[|Y|^2], Y - E[Y]).

    Reduces to the superimposed-pilot bound for zero-mean fading and to the
    worst-case-noise bound when the pilot share is zero on a deterministic
    channel.  ``moments`` may be a Monte-Carlo MomentSet; the default is the
    closed form (gaussian_fading required).
    """
    ms = moments if moments is not None else closed_form_moments(channel, signal)
    c, phi = _hybrid_matrix(ms)
    p = signal.data_power
    params = {"snr": signal.snr, "pilot_share": signal.pilot_share,
              "los_fraction": abs(channel.fading_mean) ** 2}
    # singularity is diagnosed before the trivial-rate short-circuit so that
    # degenerate moment sets are reported rather than masked
    sol = _solve_2x2_psd(c, np.conj(phi))
    if p == 0.0:
        return BoundValue(0.0, "hybrid", params)
    reduction = float(np.real(phi @ sol))
    margin = p - reduction
    if margin <= 0.0:
        raise ConsistencyError(
            f"estimator variance reduction {reduction} >= data power {p}; "
            "moments are inconsistent (or too noisy if Monte-Carlo estimated)")
    return BoundValue(-math.log1p(-reduction / p), "hybrid", params)


def optimized_superimposed_bound(
    channel: ChannelSpec, snr: float, tol: float = 1e-9
) -> tuple[float, BoundValue]:
    """Numerically optimal pilot share and bound at a given SNR (works with
    line of sight, where no closed form exists); returns (share, bound)."""
    def rate(nu: float) -> float:
        return superimposed_pilot_bound(channel, SignalSpec(snr, nu)).rate_nats

    nu, _ = golden_section_max(rate, 0.0, 1.0, tol=tol)
    return nu, superimposed_pilot_bound(channel, SignalSpec(snr, nu))


def optimized_hybrid_bound(
    channel: ChannelSpec, snr: float, tol: float = 1e-9
) -> tuple[float, BoundValue]:
    """Pilot share maximizing the hybrid bound, found by golden section."""
    def rate(nu: float) -> float:
        return hybrid_bound(channel, SignalSpec(snr, nu)).rate_nats

    nu, _ = golden_section_max(rate, 0.0, 1.0, tol=tol)
    return nu, hybrid_bound(channel, SignalSpec(snr, nu))
