"""Channel and signal parameterizations.

The scalar channel is Y = (fading_mean + H) * (pilot + X) + Z with X the
zero-mean circularly-symmetric Gaussian data symbol, H the zero-mean diffuse
fading component, and Z unit-variance noise.  All powers are relative to the
unit noise power; SNR is linear here (dB only at the CLI boundary).
"""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ChannelSpec:
    """Distributional description of the fading and noise.

    ``fading_kurtosis`` and ``noise_kurtosis`` are fourth absolute moments of
    the zero-mean parts divided by the squared variance (2 for a circular
    Gaussian, >= 1 for any complex random variable).  ``gaussian_fading``
    enables the exact moment engine paths and the Monte-Carlo sampler.
    """

    fading_mean: complex = 0.0
    fading_var: float = 1.0
    fading_kurtosis: float = 2.0
    noise_kurtosis: float = 2.0
    gaussian_fading: bool = True

    def __post_init__(self):
        if self.fading_var < 0:
            raise ValueError(f"fading_var must be >= 0, got {self.fading_var}")
        if self.fading_kurtosis < 1.0:
            raise ValueError(f"fading_kurtosis must be >= 1, got {self.fading_kurtosis}")
        if self.noise_kurtosis < 1.0:
            raise ValueError(f"noise_kurtosis must be >= 1, got {self.noise_kurtosis}")
        if self.gaussian_fading and self.fading_var > 0 and self.fading_kurtosis != 2.0:
            raise ValueError("gaussian_fading requires fading_kurtosis == 2")

    @property
    def fading_power(self) -> float:
        """Total mean-square fading gain |mean|^2 + var."""
        return abs(self.fading_mean) ** 2 + self.fading_var

    @property
    def is_normalized(self) -> bool:
        """Unit total fading power, the convention of the scalar bounds."""
        return abs(self.fading_power - 1.0) <= 1e-9


def rayleigh_channel() -> ChannelSpec:
    """Zero-mean unit-variance circular Gaussian fading, Gaussian noise."""
    return ChannelSpec(fading_mean=0.0, fading_var=1.0)


def rician_channel(los_fraction: float) -> ChannelSpec:
    """Line-of-sight fraction ``los_fraction`` in [0, 1]: deterministic
    component sqrt(los_fraction), diffuse variance 1 - los_fraction."""
    if not 0.0 <= los_fraction <= 1.0:
        raise ValueError(f"los_fraction must be in [0, 1], got {los_fraction}")
    return ChannelSpec(fading_mean=math.sqrt(los_fraction), fading_var=1.0 - los_fraction)


@dataclass(frozen=True)
class SignalSpec:
    """Total SNR and the fraction of it spent on the superimposed pilot.

    Pilot power nu*rho and data power (1-nu)*rho saturate the power
    constraint; the pilot is taken real nonnegative (its phase enters no
    bound).
    """

    snr: float
    pilot_share: float

    def __post_init__(self):
        if self.snr < 0:
            raise ValueError(f"snr must be >= 0, got {self.snr}")
        if not 0.0 <= self.pilot_share <= 1.0:
            raise ValueError(f"pilot_share must be in [0, 1], got {self.pilot_share}")

    @property
    def pilot_power(self) -> float:
        return self.pilot_share * self.snr

    @property
    def data_power(self) -> float:
        return (1.0 - self.pilot_share) * self.snr

    @property
    def pilot(self) -> float:
        """The superimposed pilot symbol itself (real, >= 0)."""
        return math.sqrt(self.pilot_power)
