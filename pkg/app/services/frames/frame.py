"""Beamforming matrix type, correlation profile and phase randomization.

Column and row indices are 1-based wherever they leave this package (reports,
construction parameters); the underlying numpy arrays are 0-based.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from app.errors import SpecError
from app.services.numerics import RandomStream
from app.utils import float_from_text, float_to_hex

logger = logging.getLogger(__name__)

MAX_ANTENNAS = 4
UNIFORM_DELTA_TOLERANCE = 1e-9


@dataclass(frozen=True)
class BeamformingMatrix:
    """N_t x N matrix whose columns are the unit-norm transmit beams.

    Attributes:
        matrix: Complex array of shape (n_t, n_beams), read-only
        construction: Provenance label (fourier, grassmannian_explicit, harmonic, mub,
            orthonormal_random)
        parameters: Construction parameters (selected rows, difference set, ...)
        norm_tolerance: Allowed deviation of column norms from 1
    """

    matrix: np.ndarray
    construction: str
    parameters: dict[str, Any] = field(default_factory=dict)
    norm_tolerance: float = 1e-12

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=np.complex128)
        if matrix.ndim != 2:
            raise SpecError(f"Beamforming matrix must be 2-D, got shape {matrix.shape}")
        n_t, n_beams = matrix.shape
        if not 1 <= n_t <= MAX_ANTENNAS:
            raise SpecError(f"Antenna count must be in [1, {MAX_ANTENNAS}], got {n_t}")
        if not n_t <= n_beams <= n_t**2:
            raise SpecError(f"Beam count must be in [{n_t}, {n_t**2}] for N_t={n_t}, got {n_beams}")
        if not np.all(np.isfinite(matrix)):
            raise SpecError("Beamforming matrix has non-finite entries")

        norms = np.linalg.norm(matrix, axis=0)
        worst = float(np.max(np.abs(norms - 1.0)))
        if worst > self.norm_tolerance:
            raise SpecError(
                f"Columns must have unit norm within {self.norm_tolerance}, worst deviation {worst:.3g}"
            )

        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)

    @property
    def n_t(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_beams(self) -> int:
        return self.matrix.shape[1]

    def column(self, n: int) -> np.ndarray:
        """Return beam n (1-based)."""
        if not 1 <= n <= self.n_beams:
            raise SpecError(f"Beam index must be in [1, {self.n_beams}], got {n}")
        return self.matrix[:, n - 1]

    def with_matrix(self, matrix: np.ndarray) -> "BeamformingMatrix":
        """Copy with new entries and the same provenance."""
        return BeamformingMatrix(
            matrix=matrix,
            construction=self.construction,
            parameters=self.parameters,
            norm_tolerance=self.norm_tolerance,
        )

    def to_dict(self) -> dict[str, Any]:
        """Serializable form with lossless hex-float entries in row-major order."""
        return {
            "n_t": self.n_t,
            "n": self.n_beams,
            "construction": self.construction,
            "norm_tolerance": self.norm_tolerance,
            "parameters": {k: list(v) if isinstance(v, tuple) else v for k, v in self.parameters.items()},
            "entries": [
                [float_to_hex(z.real), float_to_hex(z.imag)] for z in self.matrix.reshape(-1)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "BeamformingMatrix":
        """Create from the serialized form (hex-float or decimal entries)."""
        try:
            n_t = int(data["n_t"])
            n_beams = int(data["n"])
            entries = data["entries"]
            if len(entries) != n_t * n_beams:
                raise SpecError(f"Expected {n_t * n_beams} entries, got {len(entries)}")
            values = [complex(float_from_text(re), float_from_text(im)) for re, im in entries]
        except (KeyError, TypeError, ValueError) as e:
            raise SpecError(f"Malformed frame document: {e}") from e

        parameters = {
            k: tuple(v) if isinstance(v, list) else v for k, v in data.get("parameters", {}).items()
        }
        return cls(
            matrix=np.array(values, dtype=np.complex128).reshape(n_t, n_beams),
            construction=data.get("construction", "imported"),
            parameters=parameters,
            norm_tolerance=float(data.get("norm_tolerance", 1e-12)),
        )

    @classmethod
    def from_json(cls, text: str) -> "BeamformingMatrix":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise SpecError(f"Frame document is not valid JSON: {e}") from e
        return cls.from_dict(data)


@dataclass(frozen=True)
class CorrelationProfile:
    """Pairwise beam correlations of a frame.

    Attributes:
        pairwise: N x N matrix of |b_l^H b_n|, symmetric with unit diagonal
        delta_max: Largest off-diagonal entry
        per_column_delta_sq: For each beam n, sum over l != n of |b_l^H b_n|^2
        delta_hat_sq: Common per-column value, None when the columns disagree by
            more than 1e-9 (or the frame's norm tolerance, if looser)
    """

    pairwise: np.ndarray
    delta_max: float
    per_column_delta_sq: np.ndarray
    delta_hat_sq: float | None

    @property
    def is_uniform(self) -> bool:
        return self.delta_hat_sq is not None

    def off_diagonal(self) -> np.ndarray:
        """Off-diagonal correlations as a flat array."""
        mask = ~np.eye(self.pairwise.shape[0], dtype=bool)
        return self.pairwise[mask]

    def require_delta_hat_sq(self) -> float:
        """Interference constant, rejecting frames without a common per-beam value."""
        if self.delta_hat_sq is None:
            spread = float(np.ptp(self.per_column_delta_sq))
            raise SpecError(
                f"Frame has no uniform interference constant (per-column spread {spread:.3g})"
            )
        return self.delta_hat_sq


def correlation_profile(frame: BeamformingMatrix) -> CorrelationProfile:
    """Compute pairwise correlations, delta and the interference constant of a frame."""
    gram = frame.matrix.conj().T @ frame.matrix
    pairwise = np.abs(gram)
    pairwise = (pairwise + pairwise.T) / 2.0
    np.fill_diagonal(pairwise, 1.0)

    n_beams = frame.n_beams
    if n_beams > 1:
        off = pairwise[~np.eye(n_beams, dtype=bool)]
        delta_max = float(off.max())
    else:
        delta_max = 0.0

    # Tabulated frames are only as uniform as their printed digits
    tolerance = max(UNIFORM_DELTA_TOLERANCE, frame.norm_tolerance)
    per_column = (pairwise**2).sum(axis=0) - 1.0
    delta_hat_sq = None
    if float(np.ptp(per_column)) <= tolerance:
        delta_hat_sq = float(per_column.mean())

    pairwise.flags.writeable = False
    per_column.flags.writeable = False
    return CorrelationProfile(
        pairwise=pairwise,
        delta_max=delta_max,
        per_column_delta_sq=per_column,
        delta_hat_sq=delta_hat_sq,
    )


def welch_lower_bound(n_t: int, n_beams: int) -> float:
    """Lower bound on the maximum correlation of any N unit vectors in C^N_t.

    Args:
        n_t: Antenna count
        n_beams: Beam count N >= n_t

    Returns:
        sqrt((N - N_t) / (N_t (N - 1))), 0 for N = N_t
    """
    if n_t < 1 or n_beams < n_t:
        raise SpecError(f"Welch bound needs N >= N_t >= 1, got N_t={n_t}, N={n_beams}")
    if n_beams == n_t:
        return 0.0
    return math.sqrt((n_beams - n_t) / (n_t * (n_beams - 1)))


def randomize_phases(frame: BeamformingMatrix, stream: RandomStream) -> BeamformingMatrix:
    """Rotate every beam by an independent uniform phase.

    Draws exactly N uniforms from the stream, one per column in column order.
    Correlation magnitudes are unchanged.
    """
    thetas = np.asarray(stream.uniform(0.0, 2.0 * np.pi, frame.n_beams), dtype=float)
    rotated = frame.matrix * np.exp(1j * thetas)[np.newaxis, :]
    return frame.with_matrix(rotated)


def align_column_phases(matrix: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate each column so its first nonzero entry is real and positive."""
    aligned = np.array(matrix, dtype=np.complex128)
    for n in range(aligned.shape[1]):
        nonzero = np.flatnonzero(np.abs(aligned[:, n]) > tol)
        if nonzero.size:
            pivot = aligned[nonzero[0], n]
            aligned[:, n] *= np.conj(pivot) / abs(pivot)
    return aligned


def frames_match(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    """Entrywise comparison up to a global phase per column."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        return False
    return bool(np.max(np.abs(align_column_phases(a) - align_column_phases(b))) <= tol)
