"""Monte Carlo simulation of the opportunistic beamforming downlink.

Each slot s is an independent work unit with its own random stream
derive_stream(master_seed, s). Inside a slot the stream is consumed in a fixed
order: the N beam phases (or the random orthonormal basis for the baseline)
first, then the K x N_t channel entries (all real parts, then all imaginary
parts). Slot results are concatenated in slot order before any reduction, so
the report is identical for every worker count.
"""

import logging
import math
from multiprocessing import Pool

import numpy as np
from scipy import stats

from app.errors import ConvergenceError, SpecError
from app.models import Construction, SimulationConfig, ThroughputReport
from app.services.channel.link import (
    EMPTY_BEAM,
    beam_gains,
    draw_channels,
    feedback_batch,
    schedule_batch,
    sinr_matrix,
    sum_rate,
)
from app.services.frames.frame import BeamformingMatrix, randomize_phases
from app.services.frames.isotropic import random_orthonormal
from app.services.frames.registry import ConstructionRegistry, get_registry
from app.services.numerics import derive_stream

logger = logging.getLogger(__name__)

CHUNKS_PER_WORKER = 4
CONFIDENCE_LEVEL = 0.95


def _slot_frame(base: BeamformingMatrix | None, n_t: int, stream) -> BeamformingMatrix:
    if base is None:
        return random_orthonormal(n_t, stream)
    return randomize_phases(base, stream)


def _check_feedback(channels: np.ndarray, frame: np.ndarray, beams: np.ndarray, slot: int) -> None:
    """Each reported beam must carry the user's largest gain |h b_n|^2."""
    gains = beam_gains(channels, frame)
    reported = gains[np.arange(gains.shape[0]), beams]
    if not np.allclose(reported, gains.max(axis=1), rtol=1e-9, atol=0.0):
        raise ConvergenceError(f"Feedback in slot {slot} does not point at the strongest beam")


def _simulate_slots(
    sim: SimulationConfig, base: BeamformingMatrix | None, start: int, stop: int
) -> tuple[np.ndarray, np.ndarray]:
    """Run slots [start, stop); returns per-slot throughput and the occupied-beam mask."""
    n_t, n_beams = sim.frame.n_t, sim.frame.n_beams
    rho = sim.rho
    throughputs = np.empty(stop - start)
    occupied = np.zeros((stop - start, n_beams), dtype=bool)
    check = logger.isEnabledFor(logging.DEBUG)

    for i, slot in enumerate(range(start, stop)):
        stream = derive_stream(sim.master_seed, slot)
        frame = _slot_frame(base, n_t, stream)
        channels = draw_channels(sim.users, n_t, sim.m, stream)
        beams, sinrs = feedback_batch(channels.matrix, frame.matrix, rho)
        if check:
            _check_feedback(channels.matrix, frame.matrix, beams, slot)
        winners, winner_sinrs = schedule_batch(beams, sinrs, n_beams)
        throughputs[i] = sum_rate(winners, winner_sinrs)
        occupied[i] = winners != EMPTY_BEAM

    return throughputs, occupied


def _chunk_bounds(slots: int, workers: int) -> list[tuple[int, int]]:
    count = min(slots, workers * CHUNKS_PER_WORKER)
    edges = np.linspace(0, slots, count + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:], strict=True) if b > a]


def _resolve(sim: SimulationConfig, registry: ConstructionRegistry | None):
    registry = registry or get_registry()
    frame_spec = registry.resolve(sim.frame)
    sim = sim.model_copy(update={"frame": frame_spec})
    base = None if frame_spec.construction == Construction.ORTHONORMAL else registry.build(frame_spec)
    return sim, base


def monte_carlo(sim: SimulationConfig, registry: ConstructionRegistry | None = None) -> ThroughputReport:
    """Estimate the mean scheduled sum rate of a configuration.

    Args:
        sim: Simulation configuration; workers > 1 fans slot chunks to a process pool
        registry: Construction registry, the shared one by default

    Returns:
        ThroughputReport with mean, standard error, 95% interval, occupancy and
        per-beam scheduling counts
    """
    sim, base = _resolve(sim, registry)
    logger.info(
        f"Simulating {sim.frame.label}, K={sim.users}, m={sim.m}, SNR={sim.snr_db} dB, "
        f"{sim.slots} slots, seed={sim.master_seed}, workers={sim.workers}"
    )

    if sim.workers > 1 and sim.slots > 1:
        bounds = _chunk_bounds(sim.slots, sim.workers)
        with Pool(processes=sim.workers) as pool:
            parts = pool.starmap(_simulate_slots, [(sim, base, a, b) for a, b in bounds])
        throughputs = np.concatenate([p[0] for p in parts])
        occupied = np.concatenate([p[1] for p in parts])
    else:
        throughputs, occupied = _simulate_slots(sim, base, 0, sim.slots)

    mean = float(throughputs.mean())
    std_error = float(throughputs.std(ddof=1) / math.sqrt(sim.slots)) if sim.slots > 1 else 0.0
    half_width = float(stats.norm.ppf(0.5 + CONFIDENCE_LEVEL / 2)) * std_error

    report = ThroughputReport(
        construction=sim.frame.label,
        n_t=sim.frame.n_t,
        n_beams=sim.frame.n_beams,
        users=sim.users,
        m=sim.m,
        snr_db=sim.snr_db,
        slots=sim.slots,
        seed=sim.master_seed,
        mean_throughput=mean,
        std_error=std_error,
        confidence_interval_95=(mean - half_width, mean + half_width),
        mean_occupancy=float(occupied.sum(axis=1).mean()),
        beam_counts=[int(c) for c in occupied.sum(axis=0)],
    )
    logger.info(f"Mean throughput {mean:.4f} +/- {half_width:.4f} bit/s/Hz")
    return report


def empirical_max_sinr_samples(
    sim: SimulationConfig,
    samples: int,
    beam: int = 1,
    registry: ConstructionRegistry | None = None,
) -> np.ndarray:
    """Maximum over K users of the exact SINR at one beam, one value per trial.

    Trial t uses derive_stream(master_seed, t), with the same per-slot draw
    order as monte_carlo.
    """
    if samples < 1:
        raise SpecError(f"Sample count must be >= 1, got {samples}")
    sim, base = _resolve(sim, registry)
    if not 1 <= beam <= sim.frame.n_beams:
        raise SpecError(f"Beam must lie in [1, {sim.frame.n_beams}], got {beam}")

    maxima = np.empty(samples)
    for t in range(samples):
        stream = derive_stream(sim.master_seed, t)
        frame = _slot_frame(base, sim.frame.n_t, stream)
        channels = draw_channels(sim.users, sim.frame.n_t, sim.m, stream)
        maxima[t] = sinr_matrix(channels.matrix, frame.matrix, sim.rho)[:, beam - 1].max()
    return maxima
