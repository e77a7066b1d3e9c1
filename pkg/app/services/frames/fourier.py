"""Fourier beamforming matrices built from N_t rows of an N-point DFT."""

import itertools
import logging
import math

import numpy as np

from app.errors import SpecError
from app.services.frames.frame import BeamformingMatrix, correlation_profile

logger = logging.getLogger(__name__)

TIE_TOLERANCE = 1e-12


def _resolve_size(n_t: int, n_beams: int | None) -> int:
    n_beams = n_t**2 if n_beams is None else n_beams
    if n_t < 1 or not n_t <= n_beams <= n_t**2:
        raise SpecError(f"Fourier frame needs N_t <= N <= N_t^2, got N_t={n_t}, N={n_beams}")
    return n_beams


def fourier_frame(n_t: int, selected_rows, n_beams: int | None = None) -> BeamformingMatrix:
    """Frame made of N_t selected rows of the N-point DFT matrix.

    Column n (1-based) holds (1/sqrt(N_t)) * w^((r-1)(n-1)) at selected row r,
    with w = exp(-j 2 pi / N).

    Args:
        n_t: Antenna count
        selected_rows: N_t distinct 1-based row indices in [1, N]
        n_beams: Transform size N, defaults to N_t^2

    Returns:
        BeamformingMatrix labelled 'fourier'
    """
    n_beams = _resolve_size(n_t, n_beams)
    rows = tuple(int(r) for r in selected_rows)
    if len(rows) != n_t:
        raise SpecError(f"Expected {n_t} selected rows, got {len(rows)}")
    if len(set(rows)) != len(rows):
        raise SpecError(f"Selected rows must be distinct, got {rows}")
    if any(not 1 <= r <= n_beams for r in rows):
        raise SpecError(f"Selected rows must lie in [1, {n_beams}], got {rows}")

    exponents = np.array(rows)[:, np.newaxis] - 1
    columns = np.arange(n_beams)[np.newaxis, :]
    matrix = np.exp(-2j * np.pi * exponents * columns / n_beams) / math.sqrt(n_t)
    return BeamformingMatrix(
        matrix=matrix,
        construction="fourier",
        parameters={"selected_rows": rows, "transform_size": n_beams},
    )


def fourier_correlation_closed_form(n_t: int, lag: int, n_beams: int | None = None) -> float:
    """Correlation between two beams of the first-rows Fourier frame separated by lag.

    Returns 1 when the lag is a multiple of N, otherwise
    (1/N_t) |sin(pi lag N_t / N) / sin(pi lag / N)|; a vanishing numerator gives exactly 0.
    """
    n_beams = _resolve_size(n_t, n_beams)
    if abs(lag) >= n_beams:
        raise SpecError(f"Lag must satisfy |lag| < {n_beams}, got {lag}")
    if lag % n_beams == 0:
        return 1.0
    if (lag * n_t) % n_beams == 0:
        return 0.0
    numerator = math.sin(math.pi * lag * n_t / n_beams)
    denominator = math.sin(math.pi * lag / n_beams)
    return abs(numerator / denominator) / n_t


def fourier_lag_profile(frame: BeamformingMatrix) -> np.ndarray:
    """Correlation of beam 1 with beam 1 + lag for lag = 0..N-1.

    For Fourier frames correlations depend only on the lag, so this vector
    describes the whole pairwise matrix.
    """
    return np.array(correlation_profile(frame).pairwise[0, :])


def optimal_row_search(n_t: int, n_beams: int | None = None) -> tuple[tuple[int, ...], float]:
    """Exhaustive search for the row subset with the lowest maximum cross-correlation.

    All C(N, N_t) subsets are scored at once: for a subset with exponents e_r the
    correlation at lag l is |sum_r w^(e_r l)| / N_t, and the frame delta is the
    maximum over l = 1..N-1.

    Args:
        n_t: Antenna count in [2, 4]
        n_beams: Transform size N, defaults to N_t^2

    Returns:
        (1-based selected rows, delta), ties resolved to the lexicographically smallest subset
    """
    if not 2 <= n_t <= 4:
        raise SpecError(f"Row search supports 2 <= N_t <= 4, got {n_t}")
    n_beams = _resolve_size(n_t, n_beams)

    subsets = np.array(list(itertools.combinations(range(n_beams), n_t)))
    lags = np.arange(1, n_beams)
    phases = np.exp(-2j * np.pi * subsets[:, :, np.newaxis] * lags[np.newaxis, np.newaxis, :] / n_beams)
    deltas = np.abs(phases.sum(axis=1)).max(axis=1) / n_t

    best = float(deltas.min())
    index = int(np.flatnonzero(deltas <= best + TIE_TOLERANCE)[0])
    rows = tuple(int(e) + 1 for e in subsets[index])
    logger.debug(f"Row search N_t={n_t}, N={n_beams}: {len(subsets)} subsets, best {rows} delta {best:.4f}")
    return rows, float(deltas[index])
