"""Tests for Fourier frames and the optimal row search."""

import numpy as np
import pytest

from app.errors import SpecError
from app.services.frames import (
    correlation_profile,
    fourier_correlation_closed_form,
    fourier_frame,
    fourier_lag_profile,
    optimal_row_search,
)


class TestFourierFrame:
    """Tests for fourier_frame."""

    def test_shape_and_parameters(self):
        """Default transform size is N_t^2."""
        frame = fourier_frame(3, (1, 2, 3))
        assert (frame.n_t, frame.n_beams) == (3, 9)
        assert frame.parameters == {"selected_rows": (1, 2, 3), "transform_size": 9}

    def test_first_column_is_constant(self):
        """Column 1 is the all-(1/sqrt(N_t)) vector."""
        frame = fourier_frame(4, (1, 10, 12, 13))
        np.testing.assert_allclose(frame.column(1), np.full(4, 0.5))

    def test_duplicate_rows_rejected(self):
        """Rows must be distinct."""
        with pytest.raises(SpecError):
            fourier_frame(3, (1, 1, 2))

    def test_row_out_of_range(self):
        """Rows must lie in [1, N]."""
        with pytest.raises(SpecError):
            fourier_frame(2, (1, 5))

    def test_smaller_transform(self):
        """A 7-point transform gives 7 beams."""
        assert fourier_frame(3, (1, 2, 3), 7).n_beams == 7


class TestClosedForm:
    """Tests for the first-rows correlation formula."""

    @pytest.mark.parametrize("n_t, expected", [(2, 0.7071), (3, 0.8440)])
    def test_lag_one(self, n_t, expected):
        """Lag 1 gives the first-rows delta."""
        assert fourier_correlation_closed_form(n_t, 1) == pytest.approx(expected, abs=1e-4)

    def test_exact_zero(self):
        """Lags that are multiples of N / N_t give exactly 0."""
        assert fourier_correlation_closed_form(2, 2) == 0.0

    def test_matches_matrix(self):
        """Formula should agree with the computed correlations for every lag."""
        for n_t, n_beams in [(3, 7), (3, 9), (4, 13), (4, 16)]:
            profile = fourier_lag_profile(fourier_frame(n_t, tuple(range(1, n_t + 1)), n_beams))
            formula = [fourier_correlation_closed_form(n_t, lag, n_beams) for lag in range(n_beams)]
            np.testing.assert_allclose(profile, formula, atol=1e-12)

    @pytest.mark.parametrize("n_t, n_beams, expected", [(3, 7, 0.7490), (4, 13, 0.8597), (4, 16, 0.9061)])
    def test_first_rows_delta(self, n_t, n_beams, expected):
        """Maximum over lags reproduces the tabulated first-rows delta."""
        delta = max(fourier_correlation_closed_form(n_t, lag, n_beams) for lag in range(1, n_beams))
        assert delta == pytest.approx(expected, abs=1e-4)

    def test_lag_out_of_range(self):
        """|lag| >= N should be rejected."""
        with pytest.raises(SpecError):
            fourier_correlation_closed_form(2, 4)


class TestOptimalRowSearch:
    """Tests for optimal_row_search."""

    def test_two_antennas(self):
        """N_t = 2 cannot beat 0.7071."""
        _, delta = optimal_row_search(2)
        assert delta == pytest.approx(0.7071, abs=1e-4)

    def test_three_antennas(self):
        """The best 3-row subset of the 9-point DFT reaches 0.6565."""
        rows, delta = optimal_row_search(3)
        assert delta == pytest.approx(0.6565, abs=1e-4)
        assert correlation_profile(fourier_frame(3, rows)).delta_max == pytest.approx(delta, abs=1e-12)

    def test_four_antennas(self):
        """The best 4-row subset of the 16-point DFT reaches 0.5817."""
        rows, delta = optimal_row_search(4)
        assert delta == pytest.approx(0.5817, abs=1e-4)
        assert rows[0] == 1

    def test_seven_point_transform_is_welch_optimal(self):
        """On a 7-point transform the optimum meets the Welch bound 0.4714."""
        _, delta = optimal_row_search(3, 7)
        assert delta == pytest.approx(0.4714, abs=1e-4)

    def test_ties_resolved_to_first_subset(self):
        """The returned subset is the lexicographically smallest optimum."""
        rows, _ = optimal_row_search(2)
        assert rows == (1, 2)

    def test_unsupported_antennas(self):
        """N_t = 5 is outside the search range."""
        with pytest.raises(SpecError):
            optimal_row_search(5)
