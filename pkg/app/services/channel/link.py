"""Downlink link model: channel draws, per-beam SINR, feedback and max-SINR scheduling.

Records exposed to callers use 1-based user and beam indices; the batch
functions that drive the Monte Carlo loop work on 0-based numpy arrays.
"""

import logging
from dataclasses import dataclass

import numpy as np

from app.errors import SpecError
from app.services.frames.frame import BeamformingMatrix
from app.services.numerics import RandomStream, sample_complex_gaussian

logger = logging.getLogger(__name__)

EMPTY_BEAM = -1


@dataclass(frozen=True)
class ChannelSet:
    """K x N_t matrix of user channels h_k (rows), entries CN(0, 1/m)."""

    matrix: np.ndarray
    m: float

    @property
    def users(self) -> int:
        return self.matrix.shape[0]

    @property
    def antennas(self) -> int:
        return self.matrix.shape[1]

    def row(self, k: int) -> np.ndarray:
        """Channel of user k (1-based)."""
        return self.matrix[k - 1]


@dataclass(frozen=True)
class FeedbackRecord:
    """Best beam and its SINR reported by one user."""

    user: int
    beam: int
    sinr: float


@dataclass(frozen=True)
class BeamAssignment:
    user: int
    sinr: float


@dataclass(frozen=True)
class ScheduleOutcome:
    """Per beam, the scheduled user and SINR, or None when no user fed back that beam."""

    assignments: tuple[BeamAssignment | None, ...]

    @property
    def n_beams(self) -> int:
        return len(self.assignments)

    @property
    def occupancy(self) -> int:
        return sum(a is not None for a in self.assignments)

    def scheduled_sinrs(self) -> list[float]:
        return [a.sinr for a in self.assignments if a is not None]


def draw_channels(users: int, n_t: int, m: float, stream: RandomStream) -> ChannelSet:
    """Draw K independent Rayleigh channels with per-entry variance 1/m."""
    if users < 1 or n_t < 1:
        raise SpecError(f"Need K >= 1 and N_t >= 1, got K={users}, N_t={n_t}")
    if not m > 0:
        raise SpecError(f"Fading parameter m must be positive, got {m}")
    matrix = sample_complex_gaussian(stream, 1.0 / m, (users, n_t))
    return ChannelSet(matrix=matrix, m=m)


def beam_gains(channels: np.ndarray, frame: np.ndarray) -> np.ndarray:
    """|h_k b_n|^2 for every user (rows) and beam (columns)."""
    return np.abs(np.atleast_2d(channels) @ frame) ** 2


def sinr_matrix(channels: np.ndarray, frame: np.ndarray, rho_linear: float) -> np.ndarray:
    """Exact SINR of every user at every beam.

    gamma_n = (rho/N) |h b_n|^2 / (1 + (rho/N) sum_{l != n} |h b_l|^2)
    """
    if not rho_linear > 0:
        raise SpecError(f"Linear SNR must be positive, got {rho_linear}")
    gains = beam_gains(channels, frame)
    scale = rho_linear / frame.shape[1]
    total = gains.sum(axis=1, keepdims=True)
    return scale * gains / (1.0 + scale * (total - gains))


def per_beam_sinr(h: np.ndarray, frame: BeamformingMatrix, rho_linear: float) -> np.ndarray:
    """SINR of one user at each of the N beams."""
    h = np.asarray(h, dtype=np.complex128).reshape(-1)
    if h.shape[0] != frame.n_t:
        raise SpecError(f"Channel length {h.shape[0]} does not match N_t={frame.n_t}")
    return sinr_matrix(h, frame.matrix, rho_linear)[0]


def feedback_batch(
    channels: np.ndarray, frame: np.ndarray, rho_linear: float
) -> tuple[np.ndarray, np.ndarray]:
    """Best beam (0-based, ties to the lowest index) and its SINR for every user."""
    sinrs = sinr_matrix(channels, frame, rho_linear)
    beams = np.argmax(sinrs, axis=1)
    return beams, sinrs[np.arange(sinrs.shape[0]), beams]


def user_feedback(
    h: np.ndarray, frame: BeamformingMatrix, rho_linear: float, user: int = 1
) -> FeedbackRecord:
    """Feedback of one user: the beam with the largest SINR and that SINR."""
    sinrs = per_beam_sinr(h, frame, rho_linear)
    beam = int(np.argmax(sinrs))
    return FeedbackRecord(user=user, beam=beam + 1, sinr=float(sinrs[beam]))


def schedule_batch(
    beams: np.ndarray, sinrs: np.ndarray, n_beams: int
) -> tuple[np.ndarray, np.ndarray]:
    """Max-SINR scheduling on every beam.

    Args:
        beams: 0-based fed-back beam per user
        sinrs: Fed-back SINR per user
        n_beams: Beam count N

    Returns:
        (winner per beam as 0-based user index or EMPTY_BEAM, winner SINR per beam or 0)
    """
    winners = np.full(n_beams, EMPTY_BEAM, dtype=np.int64)
    winner_sinrs = np.zeros(n_beams)
    if beams.size == 0:
        return winners, winner_sinrs

    users = np.arange(beams.shape[0])
    # beam ascending, SINR descending, user ascending
    order = np.lexsort((users, -sinrs, beams))
    sorted_beams = beams[order]
    first = np.flatnonzero(np.r_[True, sorted_beams[1:] != sorted_beams[:-1]])
    chosen = order[first]
    winners[beams[chosen]] = chosen
    winner_sinrs[beams[chosen]] = sinrs[chosen]
    return winners, winner_sinrs


def schedule(feedbacks: list[FeedbackRecord], n_beams: int) -> ScheduleOutcome:
    """Schedule, on every beam, the user with the largest fed-back SINR (ties to the lowest user)."""
    for record in feedbacks:
        if not 1 <= record.beam <= n_beams:
            raise SpecError(f"User {record.user} fed back beam {record.beam} outside [1, {n_beams}]")

    ordered = sorted(feedbacks, key=lambda r: r.user)
    beams = np.array([r.beam - 1 for r in ordered], dtype=np.int64)
    sinrs = np.array([r.sinr for r in ordered], dtype=float)
    winners, winner_sinrs = schedule_batch(beams, sinrs, n_beams)

    assignments = tuple(
        None if w == EMPTY_BEAM else BeamAssignment(user=ordered[w].user, sinr=float(winner_sinrs[n]))
        for n, w in enumerate(winners)
    )
    return ScheduleOutcome(assignments=assignments)


def sum_rate(winners: np.ndarray, winner_sinrs: np.ndarray) -> float:
    """Sum of log2(1 + SINR) over occupied beams."""
    occupied = winners != EMPTY_BEAM
    return float(np.log2(1.0 + winner_sinrs[occupied]).sum())


def slot_throughput(outcome: ScheduleOutcome) -> float:
    """Bits/s/Hz delivered in one slot; empty beams contribute nothing."""
    return float(np.log2(1.0 + np.array(outcome.scheduled_sinrs(), dtype=float)).sum())
