"""Vector-channel generalization of the quadratic-estimator bound.

The data vector is estimated linearly from the reduced quadratic observable
y y^H c for a fixed reduction vector c; the bound is
log|Q| - log|Q - Phi Psi^{-1} Phi^H| with Phi = E[x c^H y y^H] and
Psi = cov(y y^H c).  The value is invariant to rescaling c but does depend
on its direction.  Moment matrices are typically Monte-Carlo estimated
(montecarlo.estimate_mimo_moments); the scalar case admits the closed-form
moment set.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, NotPositiveDefiniteError
from .bounds import BoundValue
from .linalg import cholesky_lower, hermitian_logdet
from .model import ChannelSpec, SignalSpec, rayleigh_channel

MAX_DIM = 64

# channel layout of the gain matrix
IID_ENTRIES = "iid"          # n_r x n_t i.i.d. entries, each fading_mean + CN(0, fading_var)
SHARED_SCALAR = "scalar_block"  # one scalar gain times the identity (block-fading embedding)


@dataclass(frozen=True)
class MimoSpec:
    """Inputs of the vector bound: input covariance, pilot vector, reduction
    vector, and the statistical layout of the gain matrix."""

    n_t: int
    n_r: int
    input_cov: np.ndarray
    pilot: np.ndarray
    reduction_vec: np.ndarray
    channel: ChannelSpec
    channel_model: str = IID_ENTRIES

    def __post_init__(self):
        if self.n_t < 1 or self.n_r < 1:
            raise ValueError("antenna counts must be >= 1")
        if max(self.n_t, self.n_r) > MAX_DIM:
            raise ValueError(f"matrix sizes capped at {MAX_DIM}")
        q = np.asarray(self.input_cov, dtype=complex)
        if q.shape != (self.n_t, self.n_t):
            raise ValueError(f"input_cov must be {self.n_t}x{self.n_t}, got {q.shape}")
        cholesky_lower(q)  # Hermitian positive definite, else this raises
        object.__setattr__(self, "input_cov", q)
        pilot = np.asarray(self.pilot, dtype=complex).reshape(-1)
        if pilot.shape != (self.n_t,):
            raise ValueError(f"pilot must have length {self.n_t}")
        object.__setattr__(self, "pilot", pilot)
        c = np.asarray(self.reduction_vec, dtype=complex).reshape(-1)
        if c.shape != (self.n_r,):
            raise ValueError(f"reduction_vec must have length {self.n_r}")
        if not np.any(c):
            raise ValueError("reduction_vec must be nonzero")
        object.__setattr__(self, "reduction_vec", c)
        if self.channel_model not in (IID_ENTRIES, SHARED_SCALAR):
            raise ValueError(f"unknown channel_model {self.channel_model!r}")
        if self.channel_model == SHARED_SCALAR and self.n_t != self.n_r:
            raise ValueError("scalar_block channels are square")


@dataclass(frozen=True)
class MimoMoments:
    """Phi = E[x c^H y y^H] (n_t x n_r) and Psi = cov(y y^H c) (n_r x n_r),
    with entrywise standard errors when Monte-Carlo estimated."""

    phi: np.ndarray
    psi: np.ndarray
    phi_se: np.ndarray | None = None
    psi_se: np.ndarray | None = None
    n_samples: int | None = None


def mimo_bound(spec: MimoSpec, moments: MimoMoments) -> BoundValue:
    """log|Q| - log|Q - Phi Psi^{-1} Phi^H| in nats per vector use."""
    phi = np.asarray(moments.phi, dtype=complex)
    psi = np.asarray(moments.psi, dtype=complex)
    if phi.shape != (spec.n_t, spec.n_r) or psi.shape != (spec.n_r, spec.n_r):
        raise ValueError("moment matrix shapes do not match the spec")
    scale = max(float(np.max(np.abs(psi))), 1e-300)
    if np.max(np.abs(psi - psi.conj().T)) > 1e-10 * scale:
        raise ValueError("Psi must be Hermitian (within 1e-10) before symmetrization")
    psi = 0.5 * (psi + psi.conj().T)
    eigs = np.linalg.eigvalsh(psi)
    if eigs[0] <= 1e-12 * np.trace(psi).real / spec.n_r:
        raise ValueError(
            f"Psi is numerically singular (min eigenvalue {eigs[0]}); "
            "the reduction vector c is unsuitable for this channel")
    q = spec.input_cov
    residual = q - phi @ np.linalg.solve(psi, phi.conj().T)
    residual = 0.5 * (residual + residual.conj().T)
    try:
        rate = hermitian_logdet(q) - hermitian_logdet(residual)
    except NotPositiveDefiniteError as err:
        raise ConsistencyError(
            f"error covariance lost positive definiteness (pivot {err.pivot}); "
            "moment estimates are too noisy — raise the sample count") from err
    # Q - residual is PSD, so the rate is nonnegative up to rounding; absorb
    # rounding-scale negatives only, anything larger is a real inconsistency
    if -1e-12 < rate < 0.0:
        rate = 0.0
    return BoundValue(rate, "mimo", {"n_t": float(spec.n_t), "n_r": float(spec.n_r)})


def block_fading_embedding(coherence_time: int, snr: float, pilot_share: float) -> MimoSpec:
    """The block-fading channel as a square vector channel: one shared
    Rayleigh gain, uniform pilot sqrt(nu rho) in every slot, white data
    covariance (1-nu) rho I, reduction vector all-ones/n.

    The resulting bound is per block; divide by the coherence time to
    compare with the per-use closed form.
    """
    if coherence_time < 1:
        raise ValueError("coherence_time must be >= 1")
    if snr < 0:
        raise ValueError("snr must be >= 0")
    if not 0.0 <= pilot_share < 1.0:
        raise ValueError("pilot_share must be in [0, 1) so the data covariance stays definite")
    n = coherence_time
    sig = SignalSpec(snr, pilot_share)
    return MimoSpec(
        n_t=n,
        n_r=n,
        input_cov=sig.data_power * np.eye(n, dtype=complex),
        pilot=np.full(n, sig.pilot, dtype=complex),
        reduction_vec=np.full(n, 1.0 / n, dtype=complex),
        channel=rayleigh_channel(),
        channel_model=SHARED_SCALAR,
    )


def scalar_mimo_spec(channel: ChannelSpec, signal: SignalSpec) -> MimoSpec:
    """1x1 particularization: Q = data power, pilot = sqrt(pilot power), c = 1."""
    if signal.data_power <= 0:
        raise ValueError("scalar particularization needs positive data power")
    return MimoSpec(
        n_t=1,
        n_r=1,
        input_cov=np.array([[signal.data_power]], dtype=complex),
        pilot=np.array([signal.pilot], dtype=complex),
        reduction_vec=np.array([1.0], dtype=complex),
        channel=channel,
        channel_model=IID_ENTRIES,
    )
