"""Asymptotic throughput of opportunistic beamforming with N beams and K users.

The numeric bounds integrate log2(1 + gamma) against the limiting densities of
the N upper extremes. With the substitution u = exp(-(gamma - a)/b) the n-th
density becomes the gamma kernel u^(n-1) e^-u / (n-1)! on (0, exp(a/b)), the
image of gamma >= 0.
"""

import logging
import math
from collections.abc import Callable

from pydantic import BaseModel

from app.errors import SpecError
from app.models import GumbelParams, SinrModel
from app.services.evt.gumbel import gumbel_params
from app.services.numerics import integrate

logger = logging.getLogger(__name__)

# Euler-Mascheroni constant, mean of the standard Gumbel law
EULER_GAMMA = 0.57721566490153286

# Beyond this u the gamma kernel is below e^-150 for every order used here
KERNEL_CUTOFF = 200.0


class ThroughputBounds(BaseModel):
    """Analytic throughput estimates in bit/s/Hz.

    Attributes:
        upper_numeric: N times the mean rate of the largest SINR
        lower_numeric: Sum of the mean rates of the N largest SINRs, None when K <= N
        upper_closed_form: N log2(1 + a + b * Euler gamma)
    """

    users: int
    upper_numeric: float
    lower_numeric: float | None
    upper_closed_form: float


def extreme_expectation(
    params: GumbelParams,
    n: int,
    func: Callable[[float], float],
    abs_tol: float | None = None,
) -> float:
    """E[func(gamma); gamma >= 0] under the limiting law of the n-th largest SINR."""
    if n < 1:
        raise SpecError(f"Extreme order must be >= 1, got {n}")
    ratio = params.a / params.b
    upper = KERNEL_CUTOFF if ratio >= math.log(KERNEL_CUTOFF) else math.exp(ratio)
    log_norm = math.lgamma(n)

    def integrand(u: float) -> float:
        if u <= 0.0:
            return 0.0
        weight = math.exp((n - 1) * math.log(u) - u - log_norm)
        return func(max(params.a - params.b * math.log(u), 0.0)) * weight

    breakpoints = [n - 1.0, n + 10.0] if n > 1 else [1.0, 10.0]
    return integrate(integrand, 0.0, upper, abs_tol, breakpoints=breakpoints)


def _rate(gamma: float) -> float:
    return math.log2(1.0 + gamma)


def throughput_upper_numeric(model: SinrModel, users: int, abs_tol: float | None = None) -> float:
    """N E[log2(1 + gamma_max)] with gamma_max following the Gumbel limit."""
    params = gumbel_params(model, users)
    return model.n_beams * extreme_expectation(params, 1, _rate, abs_tol)


def throughput_lower_numeric(model: SinrModel, users: int, abs_tol: float | None = None) -> float:
    """Sum over n = 1..N of E[log2(1 + gamma_(n))] for the N upper extremes."""
    if users < model.n_beams + 1:
        raise SpecError(f"Lower bound needs K >= N + 1, got K={users}, N={model.n_beams}")
    params = gumbel_params(model, users)
    return sum(extreme_expectation(params, n, _rate, abs_tol) for n in range(1, model.n_beams + 1))


def throughput_closed_form(model: SinrModel, users: int) -> float:
    """N log2(1 + (rho m N (gamma_E + ln K) + rho^2 delta_hat_sq ln^2 K) / (m N + rho delta_hat_sq ln K)^2)."""
    if users < 2:
        raise SpecError(f"User count must be >= 2, got {users}")
    log_k = math.log(users)
    mn = model.m * model.n_beams
    numerator = model.rho * mn * (EULER_GAMMA + log_k) + model.rho**2 * model.delta_hat_sq * log_k**2
    denominator = (mn + model.rho * model.delta_hat_sq * log_k) ** 2
    return model.n_beams * math.log2(1.0 + numerator / denominator)


def throughput_bounds(model: SinrModel, users: int, abs_tol: float | None = None) -> ThroughputBounds:
    """All three analytic estimates; the lower bound is omitted when K <= N."""
    lower = None
    if users >= model.n_beams + 1:
        lower = throughput_lower_numeric(model, users, abs_tol)
    bounds = ThroughputBounds(
        users=users,
        upper_numeric=throughput_upper_numeric(model, users, abs_tol),
        lower_numeric=lower,
        upper_closed_form=throughput_closed_form(model, users),
    )
    logger.debug(f"Bounds N={model.n_beams}, K={users}: {bounds}")
    return bounds
