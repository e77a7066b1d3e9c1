"""Gumbel limit of the maximum SINR over K users and its N upper extremes."""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from app.errors import ConvergenceError, SpecError
from app.models import GumbelParams, SinrModel
from app.services.evt.sinr_model import log_sinr_cdf, log_sinr_pdf, sinr_cdf, sinr_pdf
from app.services.numerics import integrate

logger = logging.getLogger(__name__)

ANCHOR_TOLERANCE = 1e-10
LN2 = math.log(2.0)


@dataclass(frozen=True)
class KlReport:
    """KL distance in bits between the exact maximum law and its Gumbel limit at K users."""

    users: int
    divergence: float


def _check_users(users: int, low: int = 2) -> None:
    if users < low:
        raise SpecError(f"User count must be >= {low}, got {users}")


def gumbel_params(model: SinrModel, users: int) -> GumbelParams:
    """Position a and scale b of the limiting law of the maximum of K SINRs.

    a solves 1 - F(a) = 1/K; b is the growth function at a.

    Raises:
        ConvergenceError: If the closed-form a misses 1 - F(a) = 1/K
    """
    _check_users(users)
    log_k = math.log(users)
    denominator = model.m * model.n_beams + model.rho * model.delta_hat_sq * log_k
    a = model.rho * log_k / denominator
    b = model.rho * model.m * model.n_beams / denominator**2

    residual = abs(1.0 - sinr_cdf(model, a) - 1.0 / users)
    if residual > ANCHOR_TOLERANCE:
        raise ConvergenceError(f"Gumbel position a={a} misses 1 - F(a) = 1/{users} by {residual:.3g}")
    return GumbelParams(a=a, b=b)


def extreme_cdf(params: GumbelParams, n: int, gamma):
    """Limiting CDF of the n-th largest SINR: exp(-e^-u) sum_{l<n} e^(-l u) / l!, u = (gamma - a)/b."""
    if n < 1:
        raise SpecError(f"Extreme order must be >= 1, got {n}")
    u = (np.asarray(gamma, dtype=float) - params.a) / params.b
    with np.errstate(over="ignore"):
        values = special.gammaincc(n, np.exp(-u))
    return float(values) if values.ndim == 0 else values


def extreme_pdf(params: GumbelParams, n: int, gamma):
    """Limiting density of the n-th largest SINR: e^(-n u) exp(-e^-u) / ((n-1)! b)."""
    if n < 1:
        raise SpecError(f"Extreme order must be >= 1, got {n}")
    u = (np.asarray(gamma, dtype=float) - params.a) / params.b
    with np.errstate(over="ignore"):
        values = np.exp(-n * u - np.exp(-u) - special.gammaln(n)) / params.b
    return float(values) if values.ndim == 0 else values


def log_gumbel_pdf(params: GumbelParams, gamma: float) -> float:
    u = (gamma - params.a) / params.b
    return -math.log(params.b) - u - math.exp(-u) if u > -700 else -math.inf


def max_law_cdf(model: SinrModel, users: int, gamma):
    """Exact CDF F(gamma)^K of the maximum of K approximate SINRs."""
    _check_users(users, 1)
    return np.power(sinr_cdf(model, gamma), users)


def max_law_pdf(model: SinrModel, users: int, gamma):
    """Exact density K f(gamma) F(gamma)^(K-1) of the maximum of K approximate SINRs."""
    _check_users(users, 1)
    return users * sinr_pdf(model, gamma) * np.power(sinr_cdf(model, gamma), users - 1)


def _log_max_law_pdf(model: SinrModel, users: int, gamma: float) -> float:
    log_f = log_sinr_pdf(model, gamma)
    if users == 1:
        return log_f
    return math.log(users) + log_f + (users - 1) * log_sinr_cdf(model, gamma)


def kl_divergence(model: SinrModel, users: int, abs_tol: float | None = None) -> KlReport:
    """KL distance, in bits, of the Gumbel limit from the exact law of the maximum SINR.

    Integrates f log2(f/g) over the support [0, 1/delta_hat_sq) of the exact law f,
    working with logarithms so the doubly exponential tails do not underflow.

    Raises:
        ConvergenceError: If the quadrature does not converge
    """
    params = gumbel_params(model, users)

    def integrand(gamma: float) -> float:
        log_f = _log_max_law_pdf(model, users, gamma)
        if log_f == -math.inf or log_f < -745:
            return 0.0
        return math.exp(log_f) * (log_f - log_gumbel_pdf(params, gamma)) / LN2

    breakpoints = [params.a + k * params.b for k in (-5, -2, 0, 2, 5, 10)]
    divergence = integrate(integrand, 0.0, model.support_end, abs_tol, breakpoints=breakpoints)
    logger.debug(f"KL(K={users}, m={model.m}) = {divergence:.5f} bits")
    return KlReport(users=users, divergence=divergence)
