"""Mutually unbiased bases generated by the powers of a fixed unitary D."""

import logging

import numpy as np

from app.errors import ConstructionError
from app.services.frames.frame import BeamformingMatrix

logger = logging.getLogger(__name__)

MUB_GENERATORS = {
    2: (1 + 1j) / 2 * np.array([[-1, 1j], [1, 1j]]),
    4: 0.5
    * np.array(
        [
            [-1j, -1j, -1j, -1j],
            [1, -1, 1, -1],
            [-1j, -1j, 1j, 1j],
            [-1, 1, 1, -1],
        ]
    ),
}


def mub_generator(n_t: int) -> np.ndarray:
    """Unitary D with D^(N_t+1) = I whose first N_t powers are mutually unbiased.

    Raises:
        ConstructionError: For N_t other than 2 and 4
    """
    if n_t not in MUB_GENERATORS:
        reason = (
            "no generator whose powers form N_t + 1 mutually unbiased bases is available for N_t=3"
            if n_t == 3
            else f"mutually unbiased generators are tabulated only for N_t in {sorted(MUB_GENERATORS)}"
        )
        raise ConstructionError(f"MUB construction unavailable for N_t={n_t}: {reason}")
    return MUB_GENERATORS[n_t].astype(np.complex128)


def mub_frame(n_t: int) -> BeamformingMatrix:
    """B = [D, D^2, ..., D^N_t], N = N_t^2 beams.

    Columns inside one power are orthogonal; columns of different powers have
    correlation exactly 1/sqrt(N_t).
    """
    generator = mub_generator(n_t)
    powers = [np.linalg.matrix_power(generator, p) for p in range(1, n_t + 1)]
    return BeamformingMatrix(matrix=np.hstack(powers), construction="mub")
