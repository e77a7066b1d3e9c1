"""Tests for the analytic throughput estimates."""

import math

import numpy as np
import pytest

from app.errors import SpecError
from app.services.evt import (
    extreme_expectation,
    gumbel_params,
    throughput_bounds,
    throughput_closed_form,
    throughput_lower_numeric,
    throughput_upper_numeric,
)
from tests.conftest import make_model


class TestClosedForm:
    """Tests for throughput_closed_form."""

    def test_grassmannian_3x7(self, model):
        """N=7, delta_hat_sq=4/3, m=0.5, 0 dB, K=64: 3.99 bit/s/Hz."""
        assert throughput_closed_form(model, 64) == pytest.approx(3.99, abs=0.01)

    def test_fewer_beams_cost(self, model):
        """Going from the 3x7 to the 3x9 frame loses about 0.19 bit/s/Hz."""
        n9 = throughput_closed_form(make_model(n_beams=9, delta_hat_sq=2.0), 64)
        assert throughput_closed_form(model, 64) - n9 == pytest.approx(0.19, abs=0.01)

    def test_four_antennas_at_5db(self):
        """N=13, delta_hat_sq=2.2499, m=0.5, 5 dB, K=128: 6.06 bit/s/Hz."""
        model = make_model(n_beams=13, rho=10**0.5, delta_hat_sq=2.2499)
        assert throughput_closed_form(model, 128) == pytest.approx(6.06, abs=0.02)

    def test_uses_euler_gamma(self, model, monkeypatch):
        """The closed form reads the Euler constant at call time."""
        reference = throughput_closed_form(model, 64)
        monkeypatch.setattr("app.services.evt.throughput.EULER_GAMMA", 0.57721566490153286 + 1e-3)
        assert throughput_closed_form(model, 64) - reference > 1e-4

    def test_increasing_in_users(self, model):
        """More users, more multi-user diversity."""
        values = [throughput_closed_form(model, k) for k in (8, 64, 512)]
        assert values == sorted(values)

    def test_single_user_rejected(self, model):
        """K = 1 is outside the asymptotic regime."""
        with pytest.raises(SpecError):
            throughput_closed_form(model, 1)


class TestNumericBounds:
    """Tests for the numeric upper and lower bounds."""

    def test_upper_close_to_closed_form(self, model):
        """Upper numeric bound sits within the Jensen gap of the closed form."""
        upper = throughput_upper_numeric(model, 64)
        closed = throughput_closed_form(model, 64)
        assert upper <= closed + 1e-9
        assert closed - upper < 0.02
        assert upper >= 3.93

    def test_lower_below_upper(self, model):
        """The lower bound sits under the upper bound and within 0.5 of the approximate-SINR mean 3.83."""
        lower = throughput_lower_numeric(model, 64)
        assert 3.83 - 0.5 <= lower <= throughput_upper_numeric(model, 64)

    def test_lower_needs_more_users_than_beams(self, model):
        """K <= N leaves some extremes undefined."""
        with pytest.raises(SpecError):
            throughput_lower_numeric(model, 7)

    def test_bounds_bundle(self, model):
        """throughput_bounds omits the lower bound when K <= N."""
        bounds = throughput_bounds(model, 4)
        assert bounds.lower_numeric is None
        assert bounds.upper_closed_form == pytest.approx(throughput_closed_form(model, 4))

    def test_probability_mass(self, model):
        """The expectation of 1 under the first extreme is 1."""
        params = gumbel_params(model, 64)
        assert extreme_expectation(params, 1, lambda g: 1.0) == pytest.approx(1.0, abs=1e-6)

    def test_two_users_match_sampling(self):
        """K=2, orthogonal single beam, m=10: Gumbel estimate is within 0.1 of sampling."""
        model = make_model(m=10.0, n_beams=1, delta_hat_sq=0.0)
        rng = np.random.default_rng(1)
        maxima = rng.exponential(1.0 / model.rate, size=(1_000_000, 2)).max(axis=1)
        sampled = float(np.mean(np.log2(1.0 + maxima)))
        assert throughput_upper_numeric(model, 2) == pytest.approx(sampled, abs=0.1)

    def test_rate_scale(self):
        """With one beam the bound is the mean rate of the maximum, finite and positive."""
        value = throughput_upper_numeric(make_model(n_beams=1, delta_hat_sq=0.0), 16)
        assert 0.0 < value < math.log2(1.0 + 100.0)
