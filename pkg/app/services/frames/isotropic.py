"""Random orthonormal beams, redrawn every slot, for the orthogonal baseline."""

import numpy as np
from scipy import linalg

from app.services.frames.frame import BeamformingMatrix
from app.services.numerics import RandomStream, sample_complex_gaussian


def random_orthonormal(n_t: int, stream: RandomStream) -> BeamformingMatrix:
    """Haar-distributed unitary basis (N = N_t beams) for the orthogonal baseline.

    QR of an i.i.d. complex Gaussian matrix with the phases of R's diagonal
    moved into Q.
    """
    gaussian = sample_complex_gaussian(stream, 1.0, (n_t, n_t))
    q, r = linalg.qr(gaussian)
    diagonal = np.diag(r)
    q = q * (diagonal / np.abs(diagonal))[np.newaxis, :]
    return BeamformingMatrix(matrix=q, construction="orthonormal_random", norm_tolerance=1e-10)
