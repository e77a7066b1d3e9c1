"""
Data models for the toolkit.

Pydantic models for the parameter bundles passed between modules: frame
specifications, the SINR model, Gumbel norming constants, Monte Carlo
configurations and reports, and the experiment specs read by the CLI.
"""

import math
from enum import StrEnum
from pathlib import Path
from typing import Any, ClassVar

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

from app.config import config
from app.errors import SpecError
from app.utils import db_to_linear, format_significant

MAX_USERS = 4096


class Construction(StrEnum):
    """Registry keys of the beamforming constructions."""

    FOURIER = "fourier"
    FOURIER_OPT = "fourier-opt"
    GRASSMANNIAN = "grassmannian"
    HARMONIC = "harmonic"
    MUB = "mub"
    ORTHONORMAL = "orthonormal"


class FrameSpec(BaseModel):
    """Which frame to build.

    Attributes:
        construction: Registry key
        n_t: Antenna count
        n_beams: Beam count N, None for the construction's default
        selected_rows: 1-based Fourier rows (fourier only, default first N_t rows)
        difference_set: Difference set elements (harmonic only, default searched)
    """

    model_config = ConfigDict(frozen=True)

    construction: Construction
    n_t: int = Field(ge=1, le=4)
    n_beams: int | None = Field(default=None, ge=1, le=16)
    selected_rows: tuple[int, ...] | None = None
    difference_set: tuple[int, ...] | None = None

    @property
    def label(self) -> str:
        size = f"{self.n_t}x{self.n_beams}" if self.n_beams else f"{self.n_t}"
        return f"{self.construction}:{size}"

    @classmethod
    def parse(cls, text: str) -> "FrameSpec":
        """Parse 'key:NTxN', 'key:NT' or 'key:NTxN@r1,r2,...'.

        The optional '@' suffix gives Fourier rows or harmonic difference-set elements.
        """
        try:
            key, _, rest = text.strip().partition(":")
            size, _, extra = rest.partition("@")
            n_t_text, _, n_text = size.lower().partition("x")
            construction = Construction(key)
            n_t = int(n_t_text)
            n_beams = int(n_text) if n_text else None
            items = tuple(int(v) for v in extra.split(",") if v.strip()) if extra else None
        except ValueError as e:
            raise SpecError(f"Cannot parse frame '{text}' (expected key:NTxN): {e}") from e

        return cls(
            construction=construction,
            n_t=n_t,
            n_beams=n_beams,
            selected_rows=items if construction == Construction.FOURIER else None,
            difference_set=items if construction == Construction.HARMONIC else None,
        )


class SinrModel(BaseModel):
    """Parameters of the approximate SINR law of one user at one beam.

    Attributes:
        m: Fading parameter (channel entries have variance 1/m)
        n_beams: Beam count N
        rho: Linear SNR
        delta_hat_sq: Interference constant of the frame
    """

    model_config = ConfigDict(frozen=True)

    m: float = Field(gt=0)
    n_beams: int = Field(ge=1)
    rho: float = Field(gt=0)
    delta_hat_sq: float = Field(ge=0)

    @classmethod
    def from_db(cls, m: float, n_beams: int, snr_db: float, delta_hat_sq: float) -> "SinrModel":
        return cls(m=m, n_beams=n_beams, rho=db_to_linear(snr_db), delta_hat_sq=delta_hat_sq)

    @property
    def support_end(self) -> float:
        """Right end 1/delta_hat_sq of the SINR support (inf for orthogonal beams)."""
        return math.inf if self.delta_hat_sq == 0 else 1.0 / self.delta_hat_sq

    @property
    def rate(self) -> float:
        """m N / rho, the exponential rate of the SINR at small values."""
        return self.m * self.n_beams / self.rho


class GumbelParams(BaseModel):
    """Position a and scale b of the limiting Gumbel law of the maximum SINR."""

    model_config = ConfigDict(frozen=True)

    a: float = Field(gt=0)
    b: float = Field(gt=0)


class MonteCarloSettings(BaseModel):
    """Slot count, seed and worker count shared by the simulating experiments."""

    slots: int = Field(default_factory=lambda: config.default_slots, ge=1)
    master_seed: int = Field(default_factory=lambda: config.default_seed, ge=0)
    workers: int = Field(default_factory=lambda: config.default_workers, ge=1)


class SimulationConfig(MonteCarloSettings):
    """One Monte Carlo experiment.

    Attributes:
        frame: Construction and its parameters
        users: User count K
        m: Fading parameter
        snr_db: SNR in dB, converted to linear for the SINR formula
    """

    model_config = ConfigDict(frozen=True)

    frame: FrameSpec
    users: int = Field(ge=1, le=MAX_USERS)
    m: float = Field(gt=0)
    snr_db: float

    @model_validator(mode="after")
    def _check_baseline(self) -> "SimulationConfig":
        if (
            self.frame.construction == Construction.ORTHONORMAL
            and self.frame.n_beams not in (None, self.frame.n_t)
        ):
            raise ValueError("The orthonormal baseline uses N = N_t beams")
        return self

    @property
    def rho(self) -> float:
        return db_to_linear(self.snr_db)


class ThroughputReport(BaseModel):
    """Monte Carlo estimate of the scheduled sum rate.

    Attributes:
        construction: Frame label
        n_t, n_beams, users, m, snr_db, slots, seed: Echo of the configuration
        mean_throughput: Mean sum rate per slot in bit/s/Hz
        std_error: Standard error of the mean
        confidence_interval_95: Normal-approximation 95% interval
        mean_occupancy: Mean count of scheduled beams per slot
        beam_counts: Per beam, number of slots in which it carried a user
    """

    CSV_COLUMNS: ClassVar[list[str]] = [
        "construction",
        "n_t",
        "n",
        "K",
        "m",
        "snr_db",
        "slots",
        "seed",
        "mean",
        "stderr",
        "ci_lo",
        "ci_hi",
        "occupancy",
    ]

    construction: str
    n_t: int
    n_beams: int
    users: int
    m: float
    snr_db: float
    slots: int
    seed: int
    mean_throughput: float = Field(ge=0)
    std_error: float = Field(ge=0)
    confidence_interval_95: tuple[float, float]
    mean_occupancy: float = Field(ge=0)
    beam_counts: list[int]

    @model_validator(mode="after")
    def _check_occupancy(self) -> "ThroughputReport":
        if self.mean_occupancy > min(self.n_beams, self.users) + 1e-12:
            raise ValueError(
                f"Mean occupancy {self.mean_occupancy} exceeds min(N, K) = {min(self.n_beams, self.users)}"
            )
        return self

    def to_csv_row(self) -> dict[str, Any]:
        """Row with throughput columns at 6 significant digits."""
        ci_lo, ci_hi = self.confidence_interval_95
        return {
            "construction": self.construction,
            "n_t": self.n_t,
            "n": self.n_beams,
            "K": self.users,
            "m": self.m,
            "snr_db": self.snr_db,
            "slots": self.slots,
            "seed": self.seed,
            "mean": format_significant(self.mean_throughput, 6),
            "stderr": format_significant(self.std_error, 6),
            "ci_lo": format_significant(ci_lo, 6),
            "ci_hi": format_significant(ci_hi, 6),
            "occupancy": format_significant(self.mean_occupancy, 6),
        }


class ExperimentKind(StrEnum):
    TABLE1 = "table1"
    KL_CURVE = "kl_curve"
    THROUGHPUT_CURVE = "throughput_curve"
    COMPARE_ORTHOGONAL = "compare_orthogonal"
    FRAMES_REPORT = "frames_report"
    SIMULATE = "simulate"


class OutputFormat(StrEnum):
    CSV = "csv"
    JSON = "json"


class OutputSpec(BaseModel):
    """Where to write results; stdout when path is None."""

    path: Path | None = None
    format: OutputFormat = OutputFormat.CSV


def _check_user_counts(values: list[int], low: int) -> list[int]:
    if not values:
        raise ValueError("At least one user count is required")
    for k in values:
        if not low <= k <= MAX_USERS:
            raise ValueError(f"User counts must lie in [{low}, {MAX_USERS}], got {k}")
    return values


class Table1Params(BaseModel):
    """Correlation table over the tabulated (N_t, N) configurations."""

    configs: list[tuple[int, int]] = Field(default=[(2, 4), (3, 7), (3, 9), (4, 13), (4, 16)])


class KlCurveParams(BaseModel):
    """KL distance between the exact maximum law and its Gumbel limit over a K grid."""

    m_values: list[float] = Field(default=[0.5, 3.0])
    k_values: list[int] = Field(default=[8, 16, 32, 64, 128, 256, 512, 1024, 2048])
    snr_db: float = 0.0
    n_beams: int = Field(default=7, ge=1)
    delta_hat_sq: float = Field(default=4.0 / 3.0, ge=0)

    @field_validator("m_values")
    @classmethod
    def _positive_m(cls, values: list[float]) -> list[float]:
        if not values or any(m <= 0 for m in values):
            raise ValueError(f"Fading parameters must be positive, got {values}")
        return values

    @field_validator("k_values")
    @classmethod
    def _k_range(cls, values: list[int]) -> list[int]:
        return _check_user_counts(values, 2)


class ThroughputCurveParams(MonteCarloSettings):
    """Simulated and analytic throughput per (frame, K, SNR)."""

    frames: list[FrameSpec] = Field(
        default_factory=lambda: [FrameSpec(construction=Construction.GRASSMANNIAN, n_t=3, n_beams=7)]
    )
    k_values: list[int] = Field(default=[64])
    m: float = Field(default=0.5, gt=0)
    snr_db_values: list[float] = Field(default=[0.0])

    @field_validator("k_values")
    @classmethod
    def _k_range(cls, values: list[int]) -> list[int]:
        return _check_user_counts(values, 1)

    @field_validator("frames", "snr_db_values")
    @classmethod
    def _non_empty(cls, values: list) -> list:
        if not values:
            raise ValueError("List must not be empty")
        return values


class CompareParams(MonteCarloSettings):
    """Proposed frame against the random orthonormal baseline with N = N_t."""

    n_t: int = Field(default=4, ge=2, le=4)
    m: float = Field(default=0.5, gt=0)
    snr_db: float = 5.0
    k_values: list[int] = Field(default=[16, 32, 64, 128])

    @field_validator("k_values")
    @classmethod
    def _k_range(cls, values: list[int]) -> list[int]:
        return _check_user_counts(values, 1)


class FramesReportParams(BaseModel):
    """Pairwise correlations of one frame, optionally exported as JSON."""

    frame: FrameSpec = Field(
        default_factory=lambda: FrameSpec(construction=Construction.GRASSMANNIAN, n_t=3, n_beams=7)
    )
    export_path: Path | None = None


PARAMETER_MODELS: dict[ExperimentKind, type[BaseModel]] = {
    ExperimentKind.TABLE1: Table1Params,
    ExperimentKind.KL_CURVE: KlCurveParams,
    ExperimentKind.THROUGHPUT_CURVE: ThroughputCurveParams,
    ExperimentKind.COMPARE_ORTHOGONAL: CompareParams,
    ExperimentKind.FRAMES_REPORT: FramesReportParams,
    ExperimentKind.SIMULATE: SimulationConfig,
}


class ExperimentSpec(BaseModel):
    """A fully resolved experiment: kind, kind-specific parameters and output target.

    The resolved spec, defaults included, is echoed in the header of every output.
    """

    kind: ExperimentKind
    parameters: (
        Table1Params
        | KlCurveParams
        | ThroughputCurveParams
        | CompareParams
        | FramesReportParams
        | SimulationConfig
    )
    output: OutputSpec = Field(default_factory=OutputSpec)

    @model_validator(mode="before")
    @classmethod
    def _parse_parameters(cls, data: Any) -> Any:
        if isinstance(data, dict) and "kind" in data:
            kind = ExperimentKind(data["kind"])
            parameters = data.get("parameters") or {}
            if isinstance(parameters, dict):
                parameters = PARAMETER_MODELS[kind].model_validate(parameters)
            data = {**data, "parameters": parameters}
        return data

    @model_validator(mode="after")
    def _check_kind(self) -> "ExperimentSpec":
        expected = PARAMETER_MODELS[self.kind]
        if type(self.parameters) is not expected:
            raise ValueError(f"Parameters for {self.kind} must be {expected.__name__}")
        return self

    @computed_field
    @property
    def artifact_version(self) -> str:
        return config.artifact_version
