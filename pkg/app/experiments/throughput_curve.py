"""Simulated throughput next to the three analytic estimates, per (frame, K, SNR)."""

import argparse
import logging

from app.errors import ConvergenceError
from app.experiments.output import ExperimentResult
from app.models import (
    Construction,
    ExperimentKind,
    FrameSpec,
    SimulationConfig,
    SinrModel,
    ThroughputCurveParams,
)
from app.services.channel import monte_carlo
from app.services.evt import throughput_bounds
from app.services.frames import ConstructionRegistry, correlation_profile, get_registry
from app.utils import format_significant, parse_k_values, parse_number_list

logger = logging.getLogger(__name__)

COLUMNS = [
    "construction",
    "n_t",
    "n",
    "K",
    "m",
    "snr_db",
    "delta_hat_sq",
    "sim_mean",
    "sim_ci_lo",
    "sim_ci_hi",
    "occupancy",
    "upper_numeric",
    "lower_numeric",
    "closed_form",
    "error",
]
DIGITS = 6


def frame_delta_hat_sq(registry: ConstructionRegistry, frame: FrameSpec) -> float:
    """Interference constant of a resolved frame spec; 0 for the orthonormal baseline."""
    if frame.construction == Construction.ORTHONORMAL:
        return 0.0
    return correlation_profile(registry.build(frame)).require_delta_hat_sq()


def analytic_columns(model: SinrModel, users: int) -> dict[str, str]:
    """Upper, lower and closed-form estimates; blank where K is outside their range."""
    if users < 2:
        return {"upper_numeric": "", "lower_numeric": "", "closed_form": ""}
    bounds = throughput_bounds(model, users)
    return {
        "upper_numeric": format_significant(bounds.upper_numeric, DIGITS),
        "lower_numeric": format_significant(bounds.lower_numeric, DIGITS),
        "closed_form": format_significant(bounds.upper_closed_form, DIGITS),
    }


def run_throughput_curve(
    params: ThroughputCurveParams, registry: ConstructionRegistry
) -> ExperimentResult:
    result = ExperimentResult(columns=COLUMNS)
    for spec in params.frames:
        frame = registry.resolve(spec)
        delta_hat_sq = frame_delta_hat_sq(registry, frame)
        for snr_db in params.snr_db_values:
            model = SinrModel.from_db(params.m, frame.n_beams, snr_db, delta_hat_sq)
            for users in params.k_values:
                sim = SimulationConfig(
                    frame=frame,
                    users=users,
                    m=params.m,
                    snr_db=snr_db,
                    slots=params.slots,
                    master_seed=params.master_seed,
                    workers=params.workers,
                )
                report = monte_carlo(sim, registry)
                ci_lo, ci_hi = report.confidence_interval_95
                row = {
                    "construction": frame.label,
                    "n_t": frame.n_t,
                    "n": frame.n_beams,
                    "K": users,
                    "m": format_significant(params.m, DIGITS),
                    "snr_db": format_significant(snr_db, DIGITS),
                    "delta_hat_sq": format_significant(delta_hat_sq, 4),
                    "sim_mean": format_significant(report.mean_throughput, DIGITS),
                    "sim_ci_lo": format_significant(ci_lo, DIGITS),
                    "sim_ci_hi": format_significant(ci_hi, DIGITS),
                    "occupancy": format_significant(report.mean_occupancy, DIGITS),
                    "upper_numeric": "",
                    "lower_numeric": "",
                    "closed_form": "",
                    "error": "",
                }
                try:
                    row.update(analytic_columns(model, users))
                except ConvergenceError as e:
                    logger.error(f"Bounds failed for {frame.label}, K={users}, SNR={snr_db}: {e}")
                    row["error"] = str(e)
                    result.failures += 1
                result.rows.append(row)
    return result


def _overrides(args: argparse.Namespace) -> dict:
    overrides = {}
    if args.table1_configs:
        overrides["frames"] = [spec.model_dump() for spec in get_registry().preferred()]
    elif args.frame:
        overrides["frames"] = [FrameSpec.parse(text).model_dump() for text in args.frame]
    if args.k is not None:
        overrides["k_values"] = parse_k_values(args.k)
    if args.m is not None:
        overrides["m"] = args.m
    if args.snr is not None:
        overrides["snr_db_values"] = parse_number_list(args.snr, float)
    if args.slots is not None:
        overrides["slots"] = args.slots
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    return overrides


def register(subparsers) -> None:
    parser = subparsers.add_parser("throughput", help="Simulated and analytic throughput curves")
    parser.add_argument(
        "--frame",
        "--construction",
        action="append",
        help="Frame as key:NTxN (repeatable), e.g. grassmannian:3x7",
    )
    parser.add_argument(
        "--table1-configs",
        action="store_true",
        help="Use the preferred frame of every tabulated (N_t, N)",
    )
    parser.add_argument("--k", help="User counts: list '16,64' or doubling range '8:2048'")
    parser.add_argument("--m", type=float, help="Fading parameter")
    parser.add_argument("--snr", help="SNR values in dB, e.g. 0,5")
    parser.add_argument("--slots", type=int, help="Monte Carlo slots per point")
    parser.add_argument("--seed", type=int, help="Master seed")
    parser.set_defaults(kind=ExperimentKind.THROUGHPUT_CURVE, overrides=_overrides)
