"""Rayleigh block-fading rates: superimposed vs. time-multiplexed pilots.

The fading gain is constant over ``coherence_time`` consecutive uses and
i.i.d. across blocks.  The superimposed-pilot closed form reduces to the
fast-fading scalar bound at coherence time 1 and saturates at
log((2(1-nu)rho+1)/((1-nu)rho+1)) as the coherence time grows; the
orthogonal (training-slot) rate is unbounded in SNR and wins everywhere
except at coherence time 1, where it has no slot to train in.
"""
from __future__ import annotations

import math

from .errors import ConsistencyError
from .bounds import BoundValue
from .optimize import golden_section_max
from .special import coherent_ergodic_capacity

_MAX_COHERENCE = 10**7


def _check_block_args(coherence_time: int, snr: float, pilot_share: float | None = None) -> None:
    if coherence_time != int(coherence_time) or coherence_time < 1:
        raise ValueError(f"coherence_time must be an integer >= 1, got {coherence_time}")
    if coherence_time > _MAX_COHERENCE:
        raise ValueError(f"coherence_time capped at {_MAX_COHERENCE}")
    if snr < 0:
        raise ValueError(f"snr must be >= 0, got {snr}")
    if pilot_share is not None and not 0.0 <= pilot_share <= 1.0:
        raise ValueError(f"pilot_share must be in [0, 1], got {pilot_share}")


def block_power_constants(coherence_time: int, snr: float, pilot_share: float) -> tuple[float, float]:
    """The (A, B) pair of the superimposed block closed form; A + B equals
    var(|Y|^2) of the scalar channel at coherence time 1."""
    n, rho, nu = float(coherence_time), snr, pilot_share
    nub = 1.0 - nu
    a = (2.0 * nub * nub + 2.0 * n * nu * (1.0 + n * nu)
         + 2.0 * (2.0 * n - 1.0) * nu * nub - 3.0 * n * nu * nu) * rho * rho + n * nu * rho
    b = ((2.0 * n * (nu * n + nub) - nub) * nub * rho * rho
         + (2.0 * nub + nu * n) * n * rho + n)
    return a, b


def block_superimposed_bound(coherence_time: int, snr: float, pilot_share: float) -> BoundValue:
    """Superimposed-pilot rate per channel use on the block-fading channel."""
    _check_block_args(coherence_time, snr, pilot_share)
    n = float(coherence_time)
    a, b = block_power_constants(coherence_time, snr, pilot_share)
    t = n * n * pilot_share * (1.0 - pilot_share) * snr * snr
    params = {"coherence_time": float(coherence_time), "snr": snr, "pilot_share": pilot_share}
    if t == 0.0:
        return BoundValue(0.0, "block_superimposed", params)
    denom1 = b
    denom2 = a * n + b
    if t >= denom1 or t >= denom2:
        raise ConsistencyError(
            f"non-positive log argument in the block bound (B={b}, A*n+B={denom2}, "
            f"cross term={t}); power constants are inconsistent")
    rate = -((n - 1.0) / n) * math.log1p(-t / denom1) - (1.0 / n) * math.log1p(-t / denom2)
    return BoundValue(rate, "block_superimposed", params)


def infinite_coherence_limit(snr: float, pilot_share: float) -> float:
    """Pointwise limit of the superimposed block rate as the coherence time
    grows: log((2(1-nu)rho+1)/((1-nu)rho+1)), maximized at pilot share 0."""
    if snr < 0:
        raise ValueError(f"snr must be >= 0, got {snr}")
    if not 0.0 <= pilot_share <= 1.0:
        raise ValueError(f"pilot_share must be in [0, 1], got {pilot_share}")
    q = (1.0 - pilot_share) * snr
    return math.log((2.0 * q + 1.0) / (q + 1.0))


def block_orthogonal_bound(coherence_time: int, snr: float) -> tuple[BoundValue, int]:
    """Best time-multiplexed pilot rate over the training length.

    Exhaustive search over 1 <= training < coherence_time (smallest winner on
    ties); requires at least one slot for training and one for data.
    """
    _check_block_args(coherence_time, snr)
    if coherence_time < 2:
        raise ValueError("orthogonal pilots need coherence_time >= 2 (no slot to train in)")
    n = float(coherence_time)
    best_rate = -1.0
    best_tau = 1
    for tau in range(1, coherence_time):
        eff_snr = snr * snr * tau / (1.0 + snr * (tau + 1.0))
        rate = (n - tau) / n * coherent_ergodic_capacity(eff_snr)
        if rate > best_rate:
            best_rate, best_tau = rate, tau
    value = BoundValue(best_rate, "block_orthogonal",
                       {"coherence_time": n, "snr": snr, "training_len": float(best_tau)})
    return value, best_tau


def optimize_block_pilot_share(
    coherence_time: int, snr: float, tol: float = 1e-9
) -> tuple[float, BoundValue]:
    """Pilot share maximizing the superimposed block rate, by golden section."""
    _check_block_args(coherence_time, snr)
    if snr == 0:
        raise ValueError("pilot-share optimization needs snr > 0")

    def rate(nu: float) -> float:
        return block_superimposed_bound(coherence_time, snr, nu).rate_nats

    nu, _ = golden_section_max(rate, 0.0, 1.0, tol=tol)
    return nu, block_superimposed_bound(coherence_time, snr, nu)
