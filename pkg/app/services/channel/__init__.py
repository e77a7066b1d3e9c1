"""Channel simulation package.

Rayleigh channel draws, SINR feedback, max-SINR scheduling and the Monte Carlo
throughput loop.
"""

from .link import (
    BeamAssignment,
    ChannelSet,
    FeedbackRecord,
    ScheduleOutcome,
    draw_channels,
    feedback_batch,
    per_beam_sinr,
    schedule,
    schedule_batch,
    slot_throughput,
    user_feedback,
)
from .monte_carlo import empirical_max_sinr_samples, monte_carlo

__all__ = [
    "BeamAssignment",
    "ChannelSet",
    "FeedbackRecord",
    "ScheduleOutcome",
    "draw_channels",
    "empirical_max_sinr_samples",
    "feedback_batch",
    "monte_carlo",
    "per_beam_sinr",
    "schedule",
    "schedule_batch",
    "slot_throughput",
    "user_feedback",
]
