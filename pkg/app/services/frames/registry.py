"""Construction registry: maps FrameSpec keys to frame builders.

Supported (N_t, N) combinations and the explanations for unavailable ones are
read from config/constructions.yaml.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import yaml

from app.config import config
from app.errors import ConstructionError, SpecError
from app.models import Construction, FrameSpec
from app.services.frames.fourier import fourier_frame, optimal_row_search
from app.services.frames.frame import BeamformingMatrix
from app.services.frames.grassmannian import (
    DifferenceSet,
    difference_set_search,
    grassmannian_2x4,
    harmonic_frame,
    harmonic_modulus,
)
from app.services.frames.isotropic import random_orthonormal
from app.services.frames.mub import mub_frame
from app.services.numerics import RandomStream

logger = logging.getLogger(__name__)


@dataclass
class ConstructionInfo:
    """Availability of one construction."""

    key: Construction
    description: str
    antennas: tuple[int, ...]
    beams: dict[int, int]
    any_size: bool = False
    notes: dict[int, str] = field(default_factory=dict)


class ConstructionRegistry:
    """Resolves frame specs against the supported configurations and builds base frames."""

    def __init__(self, path: Path | None = None):
        self.path = Path(path or config.constructions_file)
        self._constructions, self._preferred = self._load_constructions()

    def _load_constructions(self) -> tuple[dict[Construction, ConstructionInfo], list[FrameSpec]]:
        """Load constructions.yaml"""
        if not self.path.exists():
            logger.error(f"constructions.yaml not found at {self.path}")
            raise SpecError(f"Construction registry file not found: {self.path}")

        try:
            with open(self.path, encoding="utf-8") as f:
                data = yaml.safe_load(f)

            constructions = {}
            for key, entry in data.get("constructions", {}).items():
                construction = Construction(key)
                constructions[construction] = ConstructionInfo(
                    key=construction,
                    description=entry.get("description", ""),
                    antennas=tuple(entry["antennas"]),
                    beams={int(k): int(v) for k, v in entry["beams"].items()},
                    any_size=bool(entry.get("any_size", False)),
                    notes={int(k): str(v) for k, v in entry.get("notes", {}).items()},
                )
            preferred = [
                FrameSpec(
                    construction=Construction(item["construction"]),
                    n_t=item["n_t"],
                    n_beams=item["n_beams"],
                )
                for item in data.get("preferred", [])
            ]
        except (yaml.YAMLError, KeyError, TypeError, ValueError) as e:
            logger.error(f"Failed to load constructions.yaml: {e}")
            raise SpecError(f"Invalid construction registry {self.path}: {e}") from e

        logger.debug(f"Loaded {len(constructions)} constructions")
        return constructions, preferred

    def info(self, key: Construction | str) -> ConstructionInfo:
        try:
            return self._constructions[Construction(key)]
        except (KeyError, ValueError) as e:
            raise ConstructionError(f"Unknown construction '{key}'") from e

    def resolve(self, spec: FrameSpec) -> FrameSpec:
        """Fill in the default beam count and check that (N_t, N) is supported.

        Raises:
            ConstructionError: With the registry's explanation when unavailable
        """
        info = self.info(spec.construction)
        if spec.n_t not in info.antennas:
            reason = info.notes.get(spec.n_t, f"supported N_t values are {list(info.antennas)}")
            raise ConstructionError(f"{spec.construction} is unavailable for N_t={spec.n_t}: {reason}")

        n_beams = spec.n_beams or info.beams[spec.n_t]
        if info.any_size:
            if not spec.n_t <= n_beams <= spec.n_t**2:
                raise ConstructionError(
                    f"{spec.construction} needs N_t <= N <= N_t^2, got N_t={spec.n_t}, N={n_beams}"
                )
        elif n_beams != info.beams[spec.n_t]:
            raise ConstructionError(
                f"{spec.construction} for N_t={spec.n_t} has N={info.beams[spec.n_t]} beams, got N={n_beams}"
            )
        if spec.selected_rows is not None and spec.construction != Construction.FOURIER:
            raise SpecError("Selected rows apply to the fourier construction only")
        if spec.difference_set is not None and spec.construction != Construction.HARMONIC:
            raise SpecError("A difference set applies to the harmonic construction only")

        return spec.model_copy(update={"n_beams": n_beams})

    def build(self, spec: FrameSpec, stream: RandomStream | None = None) -> BeamformingMatrix:
        """Build the base (not phase-randomized) frame of a spec.

        The orthonormal baseline is random and needs a stream.
        """
        spec = self.resolve(spec)
        n_t, n_beams = spec.n_t, spec.n_beams

        match spec.construction:
            case Construction.FOURIER:
                rows = spec.selected_rows or tuple(range(1, n_t + 1))
                return fourier_frame(n_t, rows, n_beams)
            case Construction.FOURIER_OPT:
                rows, _ = _cached_row_search(n_t, n_beams)
                return fourier_frame(n_t, rows, n_beams)
            case Construction.GRASSMANNIAN:
                if n_t == 2:
                    return grassmannian_2x4()
                return harmonic_frame(n_t, _cached_difference_set(n_t))
            case Construction.HARMONIC:
                if spec.difference_set is not None:
                    ds = DifferenceSet(harmonic_modulus(n_t), spec.difference_set)
                else:
                    ds = _cached_difference_set(n_t)
                return harmonic_frame(n_t, ds)
            case Construction.MUB:
                return mub_frame(n_t)
            case Construction.ORTHONORMAL:
                if stream is None:
                    raise SpecError("The orthonormal baseline needs a random stream")
                return random_orthonormal(n_t, stream)

        raise ConstructionError(f"No builder for {spec.construction}")

    def preferred(self) -> list[FrameSpec]:
        """Lowest-correlation construction for each tabulated (N_t, N)."""
        return list(self._preferred)

    def preferred_for(self, n_t: int, n_beams: int) -> FrameSpec:
        for spec in self._preferred:
            if (spec.n_t, spec.n_beams) == (n_t, n_beams):
                return spec
        raise ConstructionError(f"No preferred construction for N_t={n_t}, N={n_beams}")

    def proposed_for(self, n_t: int) -> FrameSpec:
        """Grassmannian frame with the most beams for N_t."""
        return self.resolve(FrameSpec(construction=Construction.GRASSMANNIAN, n_t=n_t))


@lru_cache(maxsize=8)
def _cached_row_search(n_t: int, n_beams: int) -> tuple[tuple[int, ...], float]:
    return optimal_row_search(n_t, n_beams)


@lru_cache(maxsize=4)
def _cached_difference_set(n_t: int) -> DifferenceSet:
    return difference_set_search(n_t)


@lru_cache(maxsize=1)
def get_registry() -> ConstructionRegistry:
    """Shared registry loaded from the configured file."""
    return ConstructionRegistry()
