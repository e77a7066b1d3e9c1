"""Tests for the approximate SINR law and its growth function."""

import math

import numpy as np
import pytest
from scipy import stats

from app.errors import SpecError
from app.services.evt import (
    growth_derivative,
    growth_function,
    sample_approx_sinr,
    sinr_cdf,
    sinr_pdf,
    von_mises_derivatives,
)
from app.services.evt.sinr_model import log_sinr_cdf, log_sinr_pdf
from app.services.numerics import derive_stream, integrate
from tests.conftest import make_model


class TestSinrCdf:
    """Tests for sinr_cdf."""

    def test_reference_value(self, model):
        """cdf(0.3) = 1 - exp(-1.75) for m=0.5, N=7, rho=1, delta_hat_sq=4/3."""
        assert sinr_cdf(model, 0.3) == pytest.approx(1.0 - math.exp(-1.75), abs=1e-12)

    def test_outside_support(self, model):
        """0 below zero, 1 past 1/delta_hat_sq."""
        assert sinr_cdf(model, -1.0) == 0.0
        assert sinr_cdf(model, 0.76) == 1.0
        assert sinr_cdf(model, 5.0) == 1.0

    def test_vectorized(self, model):
        """Array input gives array output."""
        values = sinr_cdf(model, np.array([0.0, 0.3, 1.0]))
        np.testing.assert_allclose(values, [0.0, 1.0 - math.exp(-1.75), 1.0])

    def test_orthogonal_is_exponential(self):
        """delta_hat_sq = 0 reduces to an exponential law with rate mN/rho."""
        model = make_model(delta_hat_sq=0.0)
        assert sinr_cdf(model, 2.0) == pytest.approx(1.0 - math.exp(-7.0))

    def test_matches_samples(self, model):
        """Samples of the approximate SINR follow the cdf."""
        samples = sample_approx_sinr(model, derive_stream(6, 0), 50_000)
        assert stats.kstest(samples, lambda g: sinr_cdf(model, g)).statistic < 0.01
        assert samples.max() < model.support_end


class TestSinrPdf:
    """Tests for sinr_pdf."""

    @pytest.mark.parametrize("m", [0.5, 3.0])
    def test_normalized(self, m):
        """Density integrates to 1 over the support."""
        model = make_model(m=m)
        total = integrate(lambda g: sinr_pdf(model, g), 0.0, model.support_end)
        assert total == pytest.approx(1.0, abs=1e-6)

    def test_derivative_of_cdf(self, model):
        """Central differences of the cdf match the density."""
        step = 1e-5
        for g in (0.05, 0.2, 0.4, 0.6):
            numeric = (sinr_cdf(model, g + step) - sinr_cdf(model, g - step)) / (2 * step)
            assert numeric == pytest.approx(sinr_pdf(model, g), abs=1e-6)

    def test_zero_outside(self, model):
        """Density vanishes outside the support."""
        assert sinr_pdf(model, -0.1) == 0.0
        assert sinr_pdf(model, 0.8) == 0.0

    def test_logs(self, model):
        """Log forms agree with the direct values."""
        assert log_sinr_pdf(model, 0.2) == pytest.approx(math.log(sinr_pdf(model, 0.2)))
        assert log_sinr_cdf(model, 0.2) == pytest.approx(math.log(sinr_cdf(model, 0.2)))
        assert log_sinr_pdf(model, 0.9) == -math.inf


class TestGrowthFunction:
    """Tests for the growth function and the von Mises condition."""

    def test_matches_ratio(self, model):
        """Growth function equals (1 - F) / f."""
        g = 0.3
        ratio = (1.0 - sinr_cdf(model, g)) / sinr_pdf(model, g)
        assert growth_function(model, g) == pytest.approx(ratio)

    def test_outside_support(self, model):
        """Growth function is undefined past the support."""
        with pytest.raises(SpecError):
            growth_function(model, 0.8)

    def test_derivative(self, model):
        """Numerical derivative matches -2 delta_hat_sq (1 - delta_hat_sq g) / rate."""
        g = 0.3
        expected = -2.0 * model.delta_hat_sq * (1.0 - model.delta_hat_sq * g) / model.rate
        assert growth_derivative(model, g) == pytest.approx(expected, rel=1e-6)

    def test_von_mises_decay(self, model):
        """Derivative tends to 0 at the right end of the support."""
        slopes = [abs(d) for _, d in von_mises_derivatives(model)]
        assert all(b < a for a, b in zip(slopes, slopes[1:], strict=False))
        assert slopes[-1] < 1e-4

    def test_von_mises_needs_bounded_support(self):
        """Orthogonal beams have no right endpoint."""
        with pytest.raises(SpecError):
            von_mises_derivatives(make_model(delta_hat_sq=0.0))
