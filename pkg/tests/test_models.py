"""Tests for the pydantic models and the experiment spec."""

import math

import pytest
from pydantic import ValidationError

from app.errors import SpecError
from app.models import (
    CompareParams,
    Construction,
    ExperimentKind,
    ExperimentSpec,
    FrameSpec,
    SimulationConfig,
    SinrModel,
    Table1Params,
    ThroughputReport,
)

from .conftest import make_frame_spec, make_model


class TestFrameSpec:
    """Tests for FrameSpec parsing and labels."""

    def test_parse_key_and_size(self):
        """key:NTxN should set construction, N_t and N."""
        spec = FrameSpec.parse("grassmannian:3x7")
        assert spec.construction == Construction.GRASSMANNIAN
        assert (spec.n_t, spec.n_beams) == (3, 7)

    def test_parse_without_beam_count(self):
        """key:NT should leave N to the registry."""
        spec = FrameSpec.parse("mub:4")
        assert spec.n_beams is None

    def test_parse_fourier_rows(self):
        """The @ suffix should give Fourier rows."""
        spec = FrameSpec.parse("fourier:3x9@3,7,9")
        assert spec.selected_rows == (3, 7, 9)
        assert spec.difference_set is None

    def test_parse_difference_set(self):
        """The @ suffix should give harmonic difference-set elements."""
        spec = FrameSpec.parse("harmonic:3x7@0,1,3")
        assert spec.difference_set == (0, 1, 3)

    def test_parse_unknown_key(self):
        """Unknown construction keys should raise SpecError."""
        with pytest.raises(SpecError):
            FrameSpec.parse("hadamard:4x8")

    def test_label(self):
        """Label should round-trip the key and size."""
        assert make_frame_spec().label == "grassmannian:3x7"

    def test_antenna_limit(self):
        """More than four antennas should fail validation."""
        with pytest.raises(ValidationError):
            FrameSpec(construction=Construction.FOURIER, n_t=5)


class TestSinrModel:
    """Tests for SinrModel derived quantities."""

    def test_from_db(self):
        """0 dB should give rho = 1."""
        assert SinrModel.from_db(0.5, 7, 0.0, 4.0 / 3.0).rho == pytest.approx(1.0)

    def test_support_end(self):
        """Support ends at 1/delta_hat_sq."""
        assert make_model(delta_hat_sq=2.0).support_end == pytest.approx(0.5)

    def test_orthogonal_support_unbounded(self):
        """Orthogonal beams have unbounded support."""
        assert make_model(delta_hat_sq=0.0).support_end == math.inf

    def test_rate(self):
        """rate = m N / rho."""
        assert make_model(m=0.5, n_beams=7, rho=2.0).rate == pytest.approx(1.75)


class TestSimulationConfig:
    """Tests for SimulationConfig validation."""

    def test_defaults_from_config(self):
        """Slots and seed default from settings."""
        sim = SimulationConfig(frame=make_frame_spec(), users=8, m=0.5, snr_db=0.0)
        assert sim.slots >= 1
        assert sim.workers >= 1

    def test_orthonormal_needs_square(self):
        """The orthonormal baseline with N != N_t should be rejected."""
        with pytest.raises(ValidationError):
            SimulationConfig(
                frame=make_frame_spec(Construction.ORTHONORMAL, 3, 7), users=8, m=0.5, snr_db=0.0
            )

    def test_zero_users_rejected(self):
        """K must be at least 1."""
        with pytest.raises(ValidationError):
            SimulationConfig(frame=make_frame_spec(), users=0, m=0.5, snr_db=0.0)


class TestThroughputReport:
    """Tests for ThroughputReport validation and CSV rows."""

    def _report(self, occupancy: float) -> ThroughputReport:
        return ThroughputReport(
            construction="grassmannian:3x7",
            n_t=3,
            n_beams=7,
            users=4,
            m=0.5,
            snr_db=0.0,
            slots=10,
            seed=1,
            mean_throughput=1.5,
            std_error=0.1,
            confidence_interval_95=(1.3, 1.7),
            mean_occupancy=occupancy,
            beam_counts=[1] * 7,
        )

    def test_occupancy_bounded_by_users(self):
        """Mean occupancy above min(N, K) is impossible."""
        with pytest.raises(ValidationError):
            self._report(4.5)

    def test_csv_row_columns(self):
        """CSV row keys should follow CSV_COLUMNS."""
        row = self._report(3.0).to_csv_row()
        assert list(row) == ThroughputReport.CSV_COLUMNS
        assert row["mean"] == "1.5"


class TestExperimentSpec:
    """Tests for kind-specific parameter parsing."""

    def test_defaults_by_kind(self):
        """An empty parameters dict should take the kind's defaults."""
        spec = ExperimentSpec.model_validate({"kind": "table1", "parameters": {}})
        assert isinstance(spec.parameters, Table1Params)
        assert (3, 7) in spec.parameters.configs

    def test_parameters_parsed_by_kind(self):
        """Parameters should be parsed with the model of the kind."""
        spec = ExperimentSpec.model_validate(
            {"kind": "compare_orthogonal", "parameters": {"n_t": 3, "k_values": [32]}}
        )
        assert isinstance(spec.parameters, CompareParams)
        assert spec.parameters.k_values == [32]

    def test_invalid_parameters(self):
        """Out-of-range parameters should fail validation."""
        with pytest.raises(ValidationError):
            ExperimentSpec.model_validate({"kind": "kl_curve", "parameters": {"k_values": [1]}})

    def test_artifact_version_echoed(self):
        """The dump should carry the artifact version."""
        spec = ExperimentSpec(kind=ExperimentKind.TABLE1, parameters=Table1Params())
        assert "artifact_version" in spec.model_dump()
