"""Grassmannian frames: the tabulated 2x4 packing and harmonic frames from difference sets."""

import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np

from app.errors import ConstructionError, SpecError
from app.services.frames.frame import BeamformingMatrix

logger = logging.getLogger(__name__)

# Printed to 4 decimals, so column norms only hold to about 1e-3
GRASSMANNIAN_2X4 = np.array(
    [
        [-0.1612 - 0.7348j, -0.0787 - 0.3192j, -0.2399 + 0.5985j, -0.9541 + 0.0j],
        [-0.5135 - 0.4128j, -0.2506 + 0.9106j, -0.7641 - 0.0212j, 0.2996 + 0.0j],
    ]
)
TABULATED_NORM_TOLERANCE = 1e-3

HARMONIC_ANTENNAS = (3, 4)


def harmonic_modulus(n_t: int) -> int:
    """Beam count N = N_t^2 - N_t + 1 of the harmonic frame."""
    return n_t**2 - n_t + 1


def grassmannian_2x4() -> BeamformingMatrix:
    """Equiangular 2x4 frame with every correlation at the Welch bound 1/sqrt(3)."""
    return BeamformingMatrix(
        matrix=GRASSMANNIAN_2X4,
        construction="grassmannian_explicit",
        norm_tolerance=TABULATED_NORM_TOLERANCE,
    )


@dataclass(frozen=True)
class DifferenceSet:
    """Perfect difference set: pairwise differences hit every nonzero residue once.

    Attributes:
        modulus: N
        elements: Increasing integers 0 <= d_1 < ... < d_k < N
    """

    modulus: int
    elements: tuple[int, ...]

    def __post_init__(self):
        elements = tuple(int(d) for d in self.elements)
        object.__setattr__(self, "elements", elements)
        if self.modulus < 2:
            raise SpecError(f"Difference set modulus must be >= 2, got {self.modulus}")
        if any(b <= a for a, b in itertools.pairwise(elements)):
            raise SpecError(f"Difference set elements must be strictly increasing, got {elements}")
        if elements and not (0 <= elements[0] and elements[-1] < self.modulus):
            raise SpecError(f"Difference set elements must lie in [0, {self.modulus}), got {elements}")
        if not self.is_perfect(self.modulus, elements):
            raise SpecError(f"{elements} is not a perfect difference set mod {self.modulus}")

    @staticmethod
    def residues(modulus: int, elements) -> list[int]:
        """All k(k-1) ordered differences d_i - d_q (i != q) reduced mod N."""
        return [(a - b) % modulus for a, b in itertools.permutations(elements, 2)]

    @staticmethod
    def is_perfect(modulus: int, elements) -> bool:
        """True when the differences cover 1..N-1 exactly once each."""
        return sorted(DifferenceSet.residues(modulus, elements)) == list(range(1, modulus))


def difference_set_search(n_t: int) -> DifferenceSet:
    """Perfect difference set mod N_t^2 - N_t + 1 with d_1 = 0 and d_2 = 1.

    Every perfect set has one translate holding both 0 and 1, and so does its
    mirror image. The remaining elements are tried from the top of the range
    down, which picks {0, 1, 5} mod 7 and {0, 1, 5, 11} mod 13.
    """
    if n_t not in HARMONIC_ANTENNAS:
        raise ConstructionError(
            f"Difference-set search supports N_t in {HARMONIC_ANTENNAS} (N_t - 1 a prime power), got {n_t}"
        )
    modulus = harmonic_modulus(n_t)
    for rest in itertools.combinations(range(modulus - 1, 1, -1), n_t - 2):
        elements = (0, 1, *sorted(rest))
        if DifferenceSet.is_perfect(modulus, elements):
            logger.debug(f"Difference set mod {modulus}: {elements}")
            return DifferenceSet(modulus, elements)

    raise ConstructionError(f"No perfect difference set of size {n_t} mod {modulus}")


def harmonic_frame(n_t: int, ds: DifferenceSet) -> BeamformingMatrix:
    """Harmonic frame: column n = 1..N has entries exp(j 2 pi n d_i / N) / sqrt(N_t).

    All correlations equal sqrt(N_t - 1) / N_t, the Welch bound for N = N_t^2 - N_t + 1.
    """
    modulus = harmonic_modulus(n_t)
    if ds.modulus != modulus or len(ds.elements) != n_t:
        raise SpecError(
            f"Harmonic frame for N_t={n_t} needs {n_t} elements mod {modulus}, "
            f"got {len(ds.elements)} mod {ds.modulus}"
        )
    d = np.array(ds.elements)[:, np.newaxis]
    n = np.arange(1, modulus + 1)[np.newaxis, :]
    matrix = np.exp(2j * np.pi * n * d / modulus) / math.sqrt(n_t)
    return BeamformingMatrix(
        matrix=matrix,
        construction="harmonic",
        parameters={"difference_set": ds.elements},
    )
