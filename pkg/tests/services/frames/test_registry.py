"""Tests for the construction registry."""

import pytest

from app.errors import ConstructionError, SpecError
from app.models import Construction, FrameSpec
from app.services.frames import ConstructionRegistry, correlation_profile
from app.services.numerics import derive_stream
from tests.conftest import make_frame_spec


class TestResolve:
    """Tests for ConstructionRegistry.resolve."""

    def test_default_beam_count(self, registry):
        """Missing N takes the construction's default."""
        spec = registry.resolve(FrameSpec(construction=Construction.GRASSMANNIAN, n_t=4))
        assert spec.n_beams == 13

    def test_mub_three_antennas(self, registry):
        """MUB at N_t = 3 is rejected with the registry note."""
        with pytest.raises(ConstructionError, match="no generator"):
            registry.resolve(FrameSpec(construction=Construction.MUB, n_t=3))

    def test_fixed_size_mismatch(self, registry):
        """Grassmannian 4x16 does not exist."""
        with pytest.raises(ConstructionError):
            registry.resolve(make_frame_spec(Construction.GRASSMANNIAN, 4, 16))

    def test_any_size_fourier(self, registry):
        """Fourier accepts any N between N_t and N_t^2."""
        assert registry.resolve(make_frame_spec(Construction.FOURIER, 3, 7)).n_beams == 7

    def test_rows_only_for_fourier(self, registry):
        """Selected rows on a non-Fourier construction are an error."""
        spec = FrameSpec(construction=Construction.MUB, n_t=2, selected_rows=(1, 2))
        with pytest.raises(SpecError):
            registry.resolve(spec)


class TestBuild:
    """Tests for ConstructionRegistry.build."""

    def test_grassmannian_two_antennas_is_tabulated(self, registry):
        """N_t = 2 uses the printed 2x4 packing."""
        frame = registry.build(make_frame_spec(Construction.GRASSMANNIAN, 2, 4))
        assert frame.construction == "grassmannian_explicit"

    def test_grassmannian_three_antennas_is_harmonic(self, registry):
        """N_t = 3 uses a harmonic frame meeting the Welch bound."""
        frame = registry.build(make_frame_spec(Construction.GRASSMANNIAN, 3, 7))
        assert frame.construction == "harmonic"
        assert correlation_profile(frame).delta_max == pytest.approx(0.4714, abs=1e-4)

    def test_fourier_opt(self, registry):
        """fourier-opt uses the searched rows."""
        frame = registry.build(make_frame_spec(Construction.FOURIER_OPT, 3, 9))
        assert correlation_profile(frame).delta_max == pytest.approx(0.6565, abs=1e-4)

    def test_harmonic_with_given_set(self, registry):
        """An explicit difference set is honored."""
        spec = FrameSpec(construction=Construction.HARMONIC, n_t=3, difference_set=(0, 1, 5))
        assert registry.build(spec).parameters["difference_set"] == (0, 1, 5)

    def test_orthonormal_needs_stream(self, registry):
        """The random baseline cannot be built without a stream."""
        spec = make_frame_spec(Construction.ORTHONORMAL, 3, None)
        with pytest.raises(SpecError):
            registry.build(spec)
        assert registry.build(spec, derive_stream(1, 0)).n_beams == 3


class TestPreferred:
    """Tests for the preferred-construction table."""

    def test_preferred_covers_table(self, registry):
        """Every tabulated (N_t, N) has a preferred construction."""
        sizes = [(s.n_t, s.n_beams) for s in registry.preferred()]
        assert sizes == [(2, 4), (3, 7), (3, 9), (4, 13), (4, 16)]

    def test_preferred_for(self, registry):
        """(4, 16) prefers MUB."""
        assert registry.preferred_for(4, 16).construction == Construction.MUB

    def test_proposed_for(self, registry):
        """The proposed frame is the Grassmannian with the most beams."""
        assert registry.proposed_for(4).n_beams == 13

    def test_missing_file(self, tmp_path):
        """A missing registry file raises SpecError."""
        with pytest.raises(SpecError):
            ConstructionRegistry(tmp_path / "missing.yaml")
