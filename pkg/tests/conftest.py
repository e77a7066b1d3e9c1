"""Pytest configuration and fixtures for the test suite."""

import os

os.environ.setdefault("OBSIM_ENVIRONMENT", "testing")

import pytest  # noqa: E402

from app.models import Construction, FrameSpec, SimulationConfig, SinrModel  # noqa: E402
from app.services.frames import get_registry  # noqa: E402
from app.services.numerics import derive_stream  # noqa: E402


def make_model(
    m: float = 0.5,
    n_beams: int = 7,
    rho: float = 1.0,
    delta_hat_sq: float = 4.0 / 3.0,
) -> SinrModel:
    """Create a SinrModel with the 3x7 Grassmannian defaults at 0 dB."""
    return SinrModel(m=m, n_beams=n_beams, rho=rho, delta_hat_sq=delta_hat_sq)


def make_frame_spec(
    construction: Construction = Construction.GRASSMANNIAN,
    n_t: int = 3,
    n_beams: int | None = 7,
) -> FrameSpec:
    return FrameSpec(construction=construction, n_t=n_t, n_beams=n_beams)


def make_simulation(
    construction: Construction = Construction.GRASSMANNIAN,
    n_t: int = 3,
    n_beams: int | None = 7,
    users: int = 16,
    m: float = 0.5,
    snr_db: float = 0.0,
    slots: int = 50,
    master_seed: int = 7,
    workers: int = 1,
) -> SimulationConfig:
    """Create a small SimulationConfig that runs in milliseconds."""
    return SimulationConfig(
        frame=make_frame_spec(construction, n_t, n_beams),
        users=users,
        m=m,
        snr_db=snr_db,
        slots=slots,
        master_seed=master_seed,
        workers=workers,
    )


@pytest.fixture
def registry():
    """Shared construction registry loaded from config/constructions.yaml."""
    return get_registry()


@pytest.fixture
def stream():
    """Fresh random stream with a fixed origin."""
    return derive_stream(123, 0)


@pytest.fixture
def model():
    """SinrModel of the 3x7 Grassmannian frame, m=0.5, 0 dB."""
    return make_model()
