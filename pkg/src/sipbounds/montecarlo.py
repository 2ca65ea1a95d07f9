"""Seeded, reproducible sampling of the channel model and empirical
estimation of every moment and estimator-error variance the bounds use.

Reproducibility contract: a given (seed, n_samples, batch_count, spec)
produces bit-identical estimates.  The sample range is split into
batch_count chunks with per-chunk seeds derived by SeedSequence.spawn, so
chunks could be evaluated in parallel without changing results; per sample
the variables are drawn in the order (data symbol, gain, noise) as one
row-major standard-normal block.  Batch means provide the standard errors;
full-sample plug-in statistics provide the values (centered quantities use
the empirical mean, bias O(1/N)).

Standard errors of complex estimates use SE^2 = sum_b |v_b - mean|^2 /
(B(B-1)), the natural complex generalization; acceptance checks compare
|analytic - estimate| against 4 SE.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import ConsistencyError
from .bounds import (
    EstimatorCoeffs,
    hybrid_bound,
    scalar_estimator_coeff,
    superimposed_pilot_bound,
)
from .mimo import IID_ENTRIES, MimoMoments, MimoSpec, mimo_bound
from .model import ChannelSpec, SignalSpec
from .moments import MomentSet, closed_form_moments


@dataclass(frozen=True)
class McConfig:
    seed: int
    n_samples: int = 1_000_000
    batch_count: int = 32

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if self.batch_count < 2:
            raise ValueError("batch_count must be >= 2 (standard errors need batches)")
        if self.n_samples < self.batch_count:
            raise ValueError("need at least one sample per batch")


@dataclass(frozen=True)
class McEstimate:
    value: complex | float
    std_error: float
    n_samples: int


def _batch_sizes(cfg: McConfig) -> list[int]:
    base, extra = divmod(cfg.n_samples, cfg.batch_count)
    return [base + (1 if b < extra else 0) for b in range(cfg.batch_count)]


def _batch_rngs(cfg: McConfig) -> list[np.random.Generator]:
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.batch_count)
    return [np.random.Generator(np.random.PCG64(s)) for s in seeds]


def _se(batch_values: list[complex]) -> float:
    b = len(batch_values)
    arr = np.asarray(batch_values)
    return float(np.sqrt(np.sum(np.abs(arr - arr.mean()) ** 2) / (b * (b - 1))))


def _require_samplable(channel: ChannelSpec) -> None:
    if not channel.gaussian_fading:
        raise ValueError("no sampler is defined for non-Gaussian fading presets")
    if channel.noise_kurtosis != 2.0:
        raise ValueError("the sampler draws circular Gaussian noise (noise_kurtosis == 2)")


def iter_channel_batches(
    channel: ChannelSpec, signal: SignalSpec, cfg: McConfig
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield (x, y) sample batches of the scalar channel
    Y = (fading_mean + H)(pilot + X) + Z."""
    _require_samplable(channel)
    x_scale = math.sqrt(signal.data_power / 2.0)
    h_scale = math.sqrt(channel.fading_var / 2.0)
    z_scale = math.sqrt(0.5)
    pilot = signal.pilot
    for nb, rng in zip(_batch_sizes(cfg), _batch_rngs(cfg)):
        raw = rng.standard_normal((nb, 6))
        x = (raw[:, 0] + 1j * raw[:, 1]) * x_scale
        h = channel.fading_mean + (raw[:, 2] + 1j * raw[:, 3]) * h_scale
        z = (raw[:, 4] + 1j * raw[:, 5]) * z_scale
        yield x, h * (pilot + x) + z


def sample_channel(
    channel: ChannelSpec, signal: SignalSpec, cfg: McConfig
) -> tuple[np.ndarray, np.ndarray]:
    """All samples at once (convenience wrapper over the batch stream)."""
    xs, ys = zip(*iter_channel_batches(channel, signal, cfg))
    return np.concatenate(xs), np.concatenate(ys)


def _moment_sums(x: np.ndarray, y: np.ndarray) -> dict[str, complex]:
    ay2 = np.abs(y) ** 2
    return {
        "n": len(x),
        "ay2": ay2.sum(),
        "ay4": (ay2 ** 2).sum(),
        "y": y.sum(),
        "y_ay2": (y * ay2).sum(),
        "xc_ay2": (np.conj(x) * ay2).sum(),
        "xc_y": (np.conj(x) * y).sum(),
    }


def _moments_from_sums(s: dict[str, complex]) -> dict[str, complex]:
    """Plug-in MomentSet values; centered quantities use the empirical mean."""
    n = s["n"]
    m2 = s["ay2"].real / n
    my = s["y"] / n
    return {
        "var_abs_y_sq": s["ay4"].real / n - m2 ** 2,
        "var_y": m2 - abs(my) ** 2,
        "e_y_abs_y_sq": s["y_ay2"] / n - my * m2,
        "e_xconj_abs_y_sq": s["xc_ay2"] / n,
        "e_xconj_y": s["xc_y"] / n,
    }


def _accumulate(total: dict[str, complex] | None, s: dict[str, complex]) -> dict[str, complex]:
    if total is None:
        return dict(s)
    return {k: total[k] + s[k] for k in total}


def estimate_moments(batches: Iterable[tuple[np.ndarray, np.ndarray]]) -> MomentSet:
    """Empirical MomentSet from a stream of (x, y) batches.

    Values are full-sample plug-in statistics (centered quantities use the
    global empirical mean, bias O(1/N)); standard errors come from the
    scatter of per-batch plug-in values (at least two batches required).
    """
    total: dict[str, complex] | None = None
    batch_values: list[dict[str, complex]] = []
    for x, y in batches:
        s = _moment_sums(x, y)
        total = _accumulate(total, s)
        batch_values.append(_moments_from_sums(s))
    if len(batch_values) < 2:
        raise ValueError("standard errors need at least two batches")
    values = _moments_from_sums(total)
    errors = {key: _se([bv[key] for bv in batch_values]) for key in MomentSet.FIELDS}
    return MomentSet(
        var_abs_y_sq=values["var_abs_y_sq"].real,
        var_y=values["var_y"].real,
        e_y_abs_y_sq=values["e_y_abs_y_sq"],
        e_xconj_abs_y_sq=values["e_xconj_abs_y_sq"],
        e_xconj_y=values["e_xconj_y"],
        std_errors=errors,
        n_samples=int(total["n"]),
    )


def _residuals(x: np.ndarray, y: np.ndarray, coeffs: EstimatorCoeffs) -> np.ndarray:
    ay2 = np.abs(y) ** 2
    if coeffs.alpha is not None:
        return x - coeffs.alpha * ay2
    a1, a2 = coeffs.alpha_vec
    # the centering shifts of the observables do not move a variance
    return x - a1 * ay2 - a2 * y


def empirical_estimator_variance(
    batches: Iterable[tuple[np.ndarray, np.ndarray]], coeffs: EstimatorCoeffs
) -> McEstimate:
    """Empirical variance of the estimation residual X - x_hat(Y)."""
    vals: list[float] = []
    n = 0
    s_d = 0j
    s_d2 = 0.0
    for x, y in batches:
        d = _residuals(x, y, coeffs)
        vals.append(float((np.abs(d) ** 2).mean() - abs(d.mean()) ** 2))
        n += len(d)
        s_d += d.sum()
        s_d2 += float((np.abs(d) ** 2).sum())
    if len(vals) < 2:
        raise ValueError("standard errors need at least two batches")
    value = s_d2 / n - abs(s_d / n) ** 2
    return McEstimate(value=value, std_error=_se(vals), n_samples=n)


# ---------------------------------------------------------------------------
# vector channel
# ---------------------------------------------------------------------------

def _iter_mimo_batches(spec: MimoSpec, cfg: McConfig) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield (x, y) batches of the vector channel; per sample the draw order
    is data vector, gain, noise vector."""
    _require_samplable(spec.channel)
    n_t, n_r = spec.n_t, spec.n_r
    chol_q = np.linalg.cholesky(spec.input_cov)
    h_scale = math.sqrt(spec.channel.fading_var / 2.0)
    hbar = spec.channel.fading_mean
    n_gain = 1 if spec.channel_model != IID_ENTRIES else n_r * n_t
    for nb, rng in zip(_batch_sizes(cfg), _batch_rngs(cfg)):
        raw = rng.standard_normal((nb, 2 * (n_t + n_gain + n_r)))
        at = 2 * n_t
        x_std = (raw[:, 0:at:2] + 1j * raw[:, 1:at:2]) / math.sqrt(2.0)
        x = x_std @ chol_q.T  # rows x ~ CN(0, Q)
        gd = raw[:, at:at + 2 * n_gain]
        z_raw = raw[:, at + 2 * n_gain:]
        z = (z_raw[:, 0::2] + 1j * z_raw[:, 1::2]) / math.sqrt(2.0)
        s = spec.pilot[None, :] + x
        if spec.channel_model == IID_ENTRIES:
            hmat = hbar + (gd[:, 0::2] + 1j * gd[:, 1::2]).reshape(nb, n_r, n_t) * h_scale
            y = np.einsum("sij,sj->si", hmat, s) + z
        else:
            h = hbar + (gd[:, 0] + 1j * gd[:, 1]) * h_scale
            y = h[:, None] * s + z
        yield x, y


def _mimo_batch_moments(
    x: np.ndarray, y: np.ndarray, c: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    nb = len(x)
    u = y @ np.conj(c)  # c^H y per sample
    phi = np.einsum("s,si,sj->ij", u, x, np.conj(y)) / nb
    v = y * np.conj(u)[:, None]  # y y^H c per sample
    vbar = v.mean(axis=0)
    psi = np.einsum("si,sj->ij", v, np.conj(v)) / nb - np.outer(vbar, np.conj(vbar))
    return phi, psi


def estimate_mimo_moments(spec: MimoSpec, cfg: McConfig) -> MimoMoments:
    """Monte-Carlo Phi and Psi with entrywise batch-means standard errors."""
    phis, psis, weights = [], [], []
    for x, y in _iter_mimo_batches(spec, cfg):
        phi, psi = _mimo_batch_moments(x, y, spec.reduction_vec)
        phis.append(phi)
        psis.append(psi)
        weights.append(len(x))
    w = (np.asarray(weights, dtype=float) / sum(weights))[:, None, None]
    phi_arr = np.asarray(phis)
    psi_arr = np.asarray(psis)
    b = len(weights)
    phi = np.sum(w * phi_arr, axis=0)
    psi = np.sum(w * psi_arr, axis=0)
    phi_se = np.sqrt(np.sum(np.abs(phi_arr - phi_arr.mean(axis=0)) ** 2, axis=0) / (b * (b - 1)))
    psi_se = np.sqrt(np.sum(np.abs(psi_arr - psi_arr.mean(axis=0)) ** 2, axis=0) / (b * (b - 1)))
    return MimoMoments(phi=phi, psi=psi, phi_se=phi_se, psi_se=psi_se,
                       n_samples=sum(weights))


def mimo_bound_mc(spec: MimoSpec, cfg: McConfig) -> McEstimate:
    """The vector bound evaluated on Monte-Carlo moments, with a batch-means
    standard error obtained by evaluating the bound per batch."""
    phis, psis, weights = [], [], []
    for x, y in _iter_mimo_batches(spec, cfg):
        phi, psi = _mimo_batch_moments(x, y, spec.reduction_vec)
        phis.append(phi)
        psis.append(psi)
        weights.append(len(x))
    w = (np.asarray(weights, dtype=float) / sum(weights))[:, None, None]
    phi = np.sum(w * np.asarray(phis), axis=0)
    psi = np.sum(w * np.asarray(psis), axis=0)
    value = mimo_bound(spec, MimoMoments(phi=phi, psi=psi)).rate_nats
    batch_rates = [
        mimo_bound(spec, MimoMoments(phi=p, psi=q)).rate_nats
        for p, q in zip(phis, psis)
    ]
    return McEstimate(value=value, std_error=_se(batch_rates), n_samples=sum(weights))


# ---------------------------------------------------------------------------
# validation harness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationRow:
    quantity: str
    analytic: complex
    mc: complex
    std_error: float
    complex_valued: bool

    @property
    def passed(self) -> bool:
        return abs(self.analytic - self.mc) <= 4.0 * self.std_error

    def _fmt(self, v: complex) -> str:
        if self.complex_valued:
            return f"{v.real:.12g}{v.imag:+.12g}j"
        return f"{v.real:.12g}"

    def to_line(self) -> str:
        status = "pass" if self.passed else "fail"
        return (f"{self.quantity}, {self._fmt(self.analytic)}, {self._fmt(self.mc)}, "
                f"{self.std_error:.12g}, {status}")


@dataclass(frozen=True)
class ValidationReport:
    rows: tuple[ValidationRow, ...]
    n_samples: int
    seed: int

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_text(self) -> str:
        lines = ["quantity, analytic, mc, se, pass"]
        lines.extend(r.to_line() for r in self.rows)
        return "\n".join(lines) + "\n"


def _safe_rate(fn) -> float:
    try:
        return fn()
    except ConsistencyError:
        return math.nan


def validate_bound(channel: ChannelSpec, signal: SignalSpec, cfg: McConfig) -> ValidationReport:
    """Compare every closed-form quantity in the scalar bound chain against
    its Monte-Carlo estimate at 4 standard errors.

    Failures are rows, not exceptions.  The report text serialization is
    byte-deterministic for a fixed configuration.
    """
    analytic = closed_form_moments(channel, signal)
    p = signal.data_power
    alpha = scalar_estimator_coeff(channel, signal)
    min_var_analytic = p - abs(analytic.e_xconj_abs_y_sq) ** 2 / analytic.var_abs_y_sq
    sup_analytic = superimposed_pilot_bound(channel, signal).rate_nats
    hyb_analytic = _safe_rate(lambda: hybrid_bound(channel, signal).rate_nats)

    def _as_moment_set(values: dict[str, complex]) -> MomentSet:
        return MomentSet(
            var_abs_y_sq=values["var_abs_y_sq"].real,
            var_y=values["var_y"].real,
            e_y_abs_y_sq=values["e_y_abs_y_sq"],
            e_xconj_abs_y_sq=values["e_xconj_abs_y_sq"],
            e_xconj_y=values["e_xconj_y"],
        )

    total: dict[str, complex] | None = None
    batch_values: list[dict[str, complex]] = []
    minvar_vals: list[float] = []
    sup_vals: list[float] = []
    hyb_vals: list[float] = []
    n = 0
    s_d = 0j
    s_d2 = 0.0
    for x, y in iter_channel_batches(channel, signal, cfg):
        s = _moment_sums(x, y)
        total = _accumulate(total, s)
        bm = _moments_from_sums(s)
        batch_values.append(bm)
        d = _residuals(x, y, EstimatorCoeffs(alpha=alpha))
        mv = float((np.abs(d) ** 2).mean() - abs(d.mean()) ** 2)
        minvar_vals.append(mv)
        sup_vals.append(math.log(p / mv) if p > 0 and mv > 0 else 0.0)
        n += len(d)
        s_d += d.sum()
        s_d2 += float((np.abs(d) ** 2).sum())
        hyb_vals.append(
            _safe_rate(lambda ms=_as_moment_set(bm): hybrid_bound(channel, signal, ms).rate_nats))

    mc_values = _moments_from_sums(total)
    errors = {key: _se([bv[key] for bv in batch_values]) for key in MomentSet.FIELDS}
    minvar_mc = s_d2 / n - abs(s_d / n) ** 2
    sup_mc = math.log(p / minvar_mc) if p > 0 and minvar_mc > 0 else 0.0
    hyb_mc = _safe_rate(
        lambda ms=_as_moment_set(mc_values): hybrid_bound(channel, signal, ms).rate_nats)

    rows = [
        ValidationRow("var_abs_y_sq", analytic.var_abs_y_sq, mc_values["var_abs_y_sq"].real,
                      errors["var_abs_y_sq"], False),
        ValidationRow("var_y", analytic.var_y, mc_values["var_y"].real,
                      errors["var_y"], False),
        ValidationRow("e_y_abs_y_sq", analytic.e_y_abs_y_sq, mc_values["e_y_abs_y_sq"],
                      errors["e_y_abs_y_sq"], True),
        ValidationRow("e_xconj_abs_y_sq", analytic.e_xconj_abs_y_sq,
                      mc_values["e_xconj_abs_y_sq"], errors["e_xconj_abs_y_sq"], True),
        ValidationRow("e_xconj_y", analytic.e_xconj_y, mc_values["e_xconj_y"],
                      errors["e_xconj_y"], True),
        ValidationRow("min_error_variance", min_var_analytic, minvar_mc,
                      _se(minvar_vals), False),
        ValidationRow("superimposed_bound", sup_analytic, sup_mc, _se(sup_vals), False),
        ValidationRow("hybrid_bound", hyb_analytic, hyb_mc, _se(hyb_vals), False),
    ]
    return ValidationReport(rows=tuple(rows), n_samples=n, seed=cfg.seed)
