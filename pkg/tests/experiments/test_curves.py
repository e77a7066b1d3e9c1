"""Tests for the simulating experiments: throughput curve, orthogonal comparison and simulate."""

import pytest

from app.errors import ConvergenceError
from app.experiments.compare import run_compare_orthogonal
from app.experiments.simulate import run_simulate
from app.experiments.throughput_curve import COLUMNS, analytic_columns, frame_delta_hat_sq, run_throughput_curve
from app.models import CompareParams, Construction, ThroughputCurveParams, ThroughputReport
from tests.conftest import make_frame_spec, make_model, make_simulation


class TestThroughputCurve:
    """Tests for run_throughput_curve."""

    def test_rows_per_frame_and_users(self, registry):
        """One row per (frame, SNR, K), in that nesting order."""
        params = ThroughputCurveParams(
            frames=[make_frame_spec(), make_frame_spec(Construction.MUB, 2, None)],
            k_values=[4, 16],
            snr_db_values=[0.0],
            slots=10,
        )
        result = run_throughput_curve(params, registry)
        assert result.columns == COLUMNS
        assert [(r["construction"], r["K"]) for r in result.rows] == [
            ("grassmannian:3x7", 4),
            ("grassmannian:3x7", 16),
            ("mub:2x4", 4),
            ("mub:2x4", 16),
        ]

    def test_analytic_blanks(self):
        """K=1 has no analytic estimate; K <= N has no lower bound."""
        model = make_model()
        assert analytic_columns(model, 1) == {"upper_numeric": "", "lower_numeric": "", "closed_form": ""}
        columns = analytic_columns(model, 4)
        assert columns["lower_numeric"] == ""
        assert columns["upper_numeric"] != ""

    def test_interference_constant(self, registry):
        """Orthonormal frames carry no interference."""
        assert frame_delta_hat_sq(registry, make_frame_spec(Construction.ORTHONORMAL, 3, None)) == 0.0
        assert frame_delta_hat_sq(registry, make_frame_spec()) == pytest.approx(4.0 / 3.0)

    def test_non_convergence_recorded(self, registry, monkeypatch):
        """Analytic failures fill the error column and count as failures."""

        def failing(model, users, abs_tol=None):
            raise ConvergenceError("budget exhausted")

        monkeypatch.setattr("app.experiments.throughput_curve.throughput_bounds", failing)
        params = ThroughputCurveParams(frames=[make_frame_spec()], k_values=[16], slots=5)
        result = run_throughput_curve(params, registry)
        assert result.failures == 1
        assert result.rows[0]["error"] == "budget exhausted"
        assert result.rows[0]["sim_mean"] != ""


class TestCompare:
    """Tests for run_compare_orthogonal."""

    def test_rows(self, registry):
        """Proposed frame is the largest Grassmannian; K=1 has no closed form."""
        params = CompareParams(n_t=2, k_values=[1, 8], slots=10)
        result = run_compare_orthogonal(params, registry)
        assert [r["K"] for r in result.rows] == [1, 8]
        assert result.rows[0]["proposed"] == "grassmannian:2x4"
        assert result.rows[0]["proposed_closed_form"] == ""
        assert result.rows[1]["baseline_closed_form"] != ""

    def test_difference_column(self, registry):
        """difference = proposed_sim - baseline_sim."""
        result = run_compare_orthogonal(CompareParams(n_t=3, k_values=[16], slots=10), registry)
        row = result.rows[0]
        expected = float(row["proposed_sim"]) - float(row["baseline_sim"])
        assert float(row["difference"]) == pytest.approx(expected, abs=1e-4)


class TestSimulate:
    """Tests for run_simulate."""

    def test_single_row(self, registry):
        """One report row plus per-beam counts."""
        result = run_simulate(make_simulation(slots=12), registry)
        assert result.columns == ThroughputReport.CSV_COLUMNS
        assert len(result.rows) == 1
        assert result.rows[0]["slots"] == 12
        assert len(result.extra["beam_counts"]) == 7
