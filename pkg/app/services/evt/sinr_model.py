"""Approximate SINR law of one user at one beam.

With z = |h b_n|^2 exponential of rate m and the interference replaced by its
mean-field value delta_hat_sq * z, the SINR is (rho/N) z / (1 + (rho/N) delta_hat_sq z),
supported on [0, 1/delta_hat_sq).
"""

import logging

import numpy as np

from app.errors import SpecError
from app.models import SinrModel
from app.services.numerics import RandomStream, sample_complex_gaussian

logger = logging.getLogger(__name__)


def _exponent(model: SinrModel, gamma: np.ndarray) -> np.ndarray:
    """m N gamma / (rho (1 - delta_hat_sq gamma)), the exponent of the survival function."""
    return model.rate * gamma / (1.0 - model.delta_hat_sq * gamma)


def _as_output(values: np.ndarray, scalar: bool):
    return float(values) if scalar else values


def sinr_cdf(model: SinrModel, gamma):
    """CDF 1 - exp(-m N gamma / (rho (1 - delta_hat_sq gamma))), 0 below 0 and 1 past the support."""
    g = np.asarray(gamma, dtype=float)
    inside = (g >= 0) & (g < model.support_end)
    safe = np.where(inside, g, 0.0)
    values = np.where(inside, -np.expm1(-_exponent(model, safe)), np.where(g < 0, 0.0, 1.0))
    return _as_output(values, g.ndim == 0)


def sinr_pdf(model: SinrModel, gamma):
    """Density (m N / (rho (1 - delta_hat_sq gamma)^2)) exp(-m N gamma / (rho (1 - delta_hat_sq gamma)))."""
    g = np.asarray(gamma, dtype=float)
    inside = (g >= 0) & (g < model.support_end)
    safe = np.where(inside, g, 0.0)
    shrink = 1.0 - model.delta_hat_sq * safe
    values = np.where(inside, model.rate / shrink**2 * np.exp(-_exponent(model, safe)), 0.0)
    return _as_output(values, g.ndim == 0)


def log_sinr_pdf(model: SinrModel, gamma: float) -> float:
    """Logarithm of sinr_pdf inside the support, -inf outside."""
    if not 0 <= gamma < model.support_end:
        return -np.inf
    shrink = 1.0 - model.delta_hat_sq * gamma
    return float(np.log(model.rate) - 2.0 * np.log(shrink) - _exponent(model, gamma))


def log_sinr_cdf(model: SinrModel, gamma: float) -> float:
    """Logarithm of sinr_cdf, accurate for small gamma; -inf at and below 0."""
    if gamma <= 0:
        return -np.inf
    if gamma >= model.support_end:
        return 0.0
    return float(np.log(-np.expm1(-_exponent(model, gamma))))


def growth_function(model: SinrModel, gamma: float) -> float:
    """(1 - F) / f = rho (1 - delta_hat_sq gamma)^2 / (m N)."""
    if not 0 <= gamma < model.support_end:
        raise SpecError(f"gamma must lie in [0, {model.support_end}), got {gamma}")
    return (1.0 - model.delta_hat_sq * gamma) ** 2 / model.rate


def growth_derivative(model: SinrModel, gamma: float, step: float | None = None) -> float:
    """Central-difference derivative of the growth function.

    The step defaults to a thousandth of the distance to the nearer end of the support.
    """
    distance = min(gamma, model.support_end - gamma)
    if step is None:
        step = 1e-3 * distance if np.isfinite(distance) and distance > 0 else 1e-6
    if not 0 < step <= distance:
        raise SpecError(f"Step {step} does not fit inside the support around gamma={gamma}")
    return (growth_function(model, gamma + step) - growth_function(model, gamma - step)) / (2.0 * step)


def von_mises_derivatives(
    model: SinrModel, eps_values=(1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
) -> list[tuple[float, float]]:
    """Growth-function derivative at 1/delta_hat_sq - eps for each eps.

    Tends to 0 as eps shrinks, which places the maximum SINR in the Gumbel
    domain of attraction.
    """
    if model.delta_hat_sq == 0:
        raise SpecError("Orthogonal beams have unbounded SINR support; use any interior point instead")
    return [(eps, growth_derivative(model, model.support_end - eps)) for eps in eps_values]


def sample_approx_sinr(model: SinrModel, stream: RandomStream, size: int) -> np.ndarray:
    """Draw SINRs from the approximate law using projected channels h b ~ CN(0, 1/m)."""
    projections = sample_complex_gaussian(stream, 1.0 / model.m, size)
    z = np.abs(projections) ** 2
    scale = model.rho / model.n_beams
    return scale * z / (1.0 + scale * model.delta_hat_sq * z)
