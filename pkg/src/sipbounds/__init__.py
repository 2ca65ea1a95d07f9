"""Mutual-information lower bounds for noncoherent fading channels with
superimposed pilots: closed forms, power-split optimization, and a seeded
Monte-Carlo validation harness."""

from .errors import ConsistencyError, NotPositiveDefiniteError
from .model import ChannelSpec, SignalSpec, rayleigh_channel, rician_channel
from .moments import (
    MomentSet,
    closed_form_moments,
    fading_fourth_moment,
    output_power_variance,
    variance_of_output_power_kurtosis,
)
from .wick import poly_conjugate, poly_expectation, poly_product, wick_moment
from .bounds import (
    BoundValue,
    EstimatorCoeffs,
    hybrid_bound,
    hybrid_estimator_coeffs,
    medard_bound,
    optimal_pilot_share,
    optimized_hybrid_bound,
    optimized_superimposed_bound,
    pilot_share_high_snr_limit,
    scalar_estimator_coeff,
    superimposed_bound_high_snr_limit,
    superimposed_pilot_bound,
)
from .blockfading import (
    block_orthogonal_bound,
    block_power_constants,
    block_superimposed_bound,
    infinite_coherence_limit,
    optimize_block_pilot_share,
)
from .special import coherent_ergodic_capacity, exp_integral_e1
from .linalg import cholesky_lower, hermitian_logdet
from .mimo import (
    MimoMoments,
    MimoSpec,
    block_fading_embedding,
    mimo_bound,
    scalar_mimo_spec,
)
from .montecarlo import (
    McConfig,
    McEstimate,
    ValidationReport,
    ValidationRow,
    empirical_estimator_variance,
    estimate_mimo_moments,
    estimate_moments,
    iter_channel_batches,
    mimo_bound_mc,
    sample_channel,
    validate_bound,
)
from .optimize import golden_section_max

__version__ = "0.1.0"

__all__ = [
    "BoundValue",
    "ChannelSpec",
    "ConsistencyError",
    "EstimatorCoeffs",
    "McConfig",
    "McEstimate",
    "MimoMoments",
    "MimoSpec",
    "MomentSet",
    "NotPositiveDefiniteError",
    "SignalSpec",
    "ValidationReport",
    "ValidationRow",
    "block_fading_embedding",
    "block_orthogonal_bound",
    "block_power_constants",
    "block_superimposed_bound",
    "cholesky_lower",
    "closed_form_moments",
    "coherent_ergodic_capacity",
    "empirical_estimator_variance",
    "estimate_mimo_moments",
    "estimate_moments",
    "exp_integral_e1",
    "fading_fourth_moment",
    "golden_section_max",
    "hermitian_logdet",
    "hybrid_bound",
    "hybrid_estimator_coeffs",
    "infinite_coherence_limit",
    "iter_channel_batches",
    "medard_bound",
    "mimo_bound",
    "mimo_bound_mc",
    "optimal_pilot_share",
    "optimize_block_pilot_share",
    "optimized_hybrid_bound",
    "optimized_superimposed_bound",
    "output_power_variance",
    "pilot_share_high_snr_limit",
    "poly_conjugate",
    "poly_expectation",
    "poly_product",
    "rayleigh_channel",
    "rician_channel",
    "sample_channel",
    "scalar_estimator_coeff",
    "scalar_mimo_spec",
    "superimposed_bound_high_snr_limit",
    "superimposed_pilot_bound",
    "validate_bound",
    "variance_of_output_power_kurtosis",
    "wick_moment",
]
