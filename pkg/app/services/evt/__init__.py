"""Extreme value analysis package.

Approximate SINR law, Gumbel limit of the maximum over users, KL validation of
the limit and the analytic throughput bounds.
"""

from .gumbel import (
    KlReport,
    extreme_cdf,
    extreme_pdf,
    gumbel_params,
    kl_divergence,
    max_law_cdf,
    max_law_pdf,
)
from .sinr_model import (
    growth_derivative,
    growth_function,
    sample_approx_sinr,
    sinr_cdf,
    sinr_pdf,
    von_mises_derivatives,
)
from .throughput import (
    ThroughputBounds,
    extreme_expectation,
    throughput_bounds,
    throughput_closed_form,
    throughput_lower_numeric,
    throughput_upper_numeric,
)

__all__ = [
    "KlReport",
    "ThroughputBounds",
    "extreme_cdf",
    "extreme_expectation",
    "extreme_pdf",
    "growth_derivative",
    "growth_function",
    "gumbel_params",
    "kl_divergence",
    "max_law_cdf",
    "max_law_pdf",
    "sample_approx_sinr",
    "sinr_cdf",
    "sinr_pdf",
    "throughput_bounds",
    "throughput_closed_form",
    "throughput_lower_numeric",
    "throughput_upper_numeric",
    "von_mises_derivatives",
]
