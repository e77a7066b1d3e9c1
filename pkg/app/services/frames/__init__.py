"""Frames package.

Builds beamforming matrices (Fourier, Grassmannian, harmonic, MUB, random
orthonormal) and computes their correlation profiles.
"""

from .fourier import (
    fourier_correlation_closed_form,
    fourier_frame,
    fourier_lag_profile,
    optimal_row_search,
)
from .frame import (
    BeamformingMatrix,
    CorrelationProfile,
    align_column_phases,
    correlation_profile,
    frames_match,
    randomize_phases,
    welch_lower_bound,
)
from .grassmannian import (
    DifferenceSet,
    difference_set_search,
    grassmannian_2x4,
    harmonic_frame,
    harmonic_modulus,
)
from .isotropic import random_orthonormal
from .mub import mub_frame, mub_generator
from .registry import ConstructionInfo, ConstructionRegistry, get_registry

__all__ = [
    "BeamformingMatrix",
    "ConstructionInfo",
    "ConstructionRegistry",
    "CorrelationProfile",
    "DifferenceSet",
    "align_column_phases",
    "correlation_profile",
    "difference_set_search",
    "fourier_correlation_closed_form",
    "fourier_frame",
    "fourier_lag_profile",
    "frames_match",
    "get_registry",
    "grassmannian_2x4",
    "harmonic_frame",
    "harmonic_modulus",
    "mub_frame",
    "mub_generator",
    "optimal_row_search",
    "random_orthonormal",
    "randomize_phases",
    "welch_lower_bound",
]
