"""Shared numerics: reproducible random streams, complex Gaussian draws and quadrature.

Random streams are keyed by (master_seed, substream_index) through numpy's
SeedSequence, so a substream never depends on how many other substreams were
created before it or on which worker process draws it.
"""

import logging
import math
import warnings
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate as scipy_integrate

from app.config import config
from app.errors import ConvergenceError, SpecError

logger = logging.getLogger(__name__)


@dataclass
class RandomStream:
    """Deterministic generator owned by one task at a time.

    Attributes:
        master_seed: Experiment-wide seed
        substream_index: Index of the work unit (slot, trial) the stream belongs to
        generator: numpy PCG64 generator seeded from (master_seed, substream_index)
    """

    master_seed: int
    substream_index: int
    generator: np.random.Generator = field(repr=False)

    @property
    def origin(self) -> tuple[int, int]:
        return (self.master_seed, self.substream_index)

    def uniform(self, low: float = 0.0, high: float = 1.0, size=None):
        return self.generator.uniform(low, high, size)

    def standard_normal(self, size=None):
        return self.generator.standard_normal(size)


def derive_stream(master_seed: int, substream_index: int) -> RandomStream:
    """Create the stream for one work unit.

    Args:
        master_seed: Experiment-wide seed (non-negative)
        substream_index: Work unit index (non-negative)

    Returns:
        RandomStream whose output depends only on the two integers
    """
    if master_seed < 0 or substream_index < 0:
        raise SpecError(
            f"Seeds must be non-negative, got ({master_seed}, {substream_index})"
        )
    seed_sequence = np.random.SeedSequence([master_seed, substream_index])
    generator = np.random.Generator(np.random.PCG64(seed_sequence))
    return RandomStream(master_seed, substream_index, generator)


def sample_complex_gaussian(stream: RandomStream, variance: float, size=None):
    """Draw circularly symmetric complex Gaussian values.

    Real and imaginary parts are independent zero-mean Gaussians with variance
    variance/2 each, so E|z|^2 = variance. The real parts of all values are drawn
    first, then the imaginary parts.

    Args:
        stream: Random stream to consume
        variance: Total variance E|z|^2
        size: None for a scalar, otherwise an int or shape tuple

    Returns:
        complex scalar or complex ndarray of the requested shape
    """
    if not variance > 0:
        raise SpecError(f"Variance must be positive, got {variance}")
    scale = math.sqrt(variance / 2.0)
    real = stream.standard_normal(size)
    imag = stream.standard_normal(size)
    values = scale * (real + 1j * imag)
    if size is None:
        return complex(values)
    return values


def integrate(
    func: Callable[[float], float],
    lower: float,
    upper: float = math.inf,
    abs_tol: float | None = None,
    *,
    breakpoints: Sequence[float] = (),
    limit: int | None = None,
) -> float:
    """Adaptive Gauss-Kronrod integration over a finite or infinite interval.

    The interval is split at the breakpoints that fall inside it; each piece is
    integrated by QUADPACK, infinite pieces through its built-in mapping onto a
    bounded interval. The call fails loudly instead of returning an inaccurate value.

    Args:
        func: Integrand, real valued
        lower: Lower limit (may be -inf)
        upper: Upper limit (may be +inf)
        abs_tol: Absolute tolerance on the total, defaults to config.quad_abs_tol
        breakpoints: Points where the integrand changes scale (peaks, kinks)
        limit: Subdivision budget per piece, defaults to config.quad_limit

    Returns:
        Value of the integral

    Raises:
        ConvergenceError: If the refinement budget is exhausted before the error
            estimate drops below abs_tol
    """
    abs_tol = config.quad_abs_tol if abs_tol is None else abs_tol
    limit = config.quad_limit if limit is None else limit
    if not abs_tol > 0:
        raise SpecError(f"Absolute tolerance must be positive, got {abs_tol}")
    if upper == lower:
        return 0.0
    if upper < lower:
        return -integrate(func, upper, lower, abs_tol, breakpoints=breakpoints, limit=limit)

    inner = sorted({float(p) for p in breakpoints if lower < p < upper})
    edges = [lower, *inner, upper]
    pieces = list(zip(edges[:-1], edges[1:], strict=True))
    piece_tol = abs_tol / len(pieces)

    total = 0.0
    for a, b in pieces:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", scipy_integrate.IntegrationWarning)
            value, error = scipy_integrate.quad(
                func, a, b, epsabs=piece_tol, epsrel=0.0, limit=limit
            )
        warned = any(issubclass(w.category, scipy_integrate.IntegrationWarning) for w in caught)
        if not math.isfinite(value) or (warned and error > piece_tol):
            raise ConvergenceError(
                f"Quadrature did not converge on [{a}, {b}]: "
                f"estimate {value}, error {error:.3g} > {piece_tol:.3g}"
            )
        if warned:
            logger.debug(f"Quadrature warning on [{a}, {b}] ignored, error {error:.3g}")
        total += value

    return total
