"""Proposed frame (Grassmannian, most beams for N_t) against the orthogonal baseline with N = N_t."""

import argparse
import logging

from app.errors import ConvergenceError
from app.experiments.output import ExperimentResult
from app.experiments.throughput_curve import frame_delta_hat_sq
from app.models import CompareParams, Construction, ExperimentKind, FrameSpec, SimulationConfig, SinrModel
from app.services.channel import monte_carlo
from app.services.evt import throughput_closed_form
from app.services.frames import ConstructionRegistry
from app.utils import format_significant, parse_k_values

logger = logging.getLogger(__name__)

COLUMNS = [
    "n_t",
    "K",
    "m",
    "snr_db",
    "proposed",
    "proposed_sim",
    "proposed_closed_form",
    "baseline_sim",
    "baseline_closed_form",
    "difference",
    "error",
]
DIGITS = 6


def _simulate(frame: FrameSpec, users: int, params: CompareParams, registry: ConstructionRegistry) -> float:
    sim = SimulationConfig(
        frame=frame,
        users=users,
        m=params.m,
        snr_db=params.snr_db,
        slots=params.slots,
        master_seed=params.master_seed,
        workers=params.workers,
    )
    return monte_carlo(sim, registry).mean_throughput


def run_compare_orthogonal(params: CompareParams, registry: ConstructionRegistry) -> ExperimentResult:
    proposed = registry.proposed_for(params.n_t)
    baseline = registry.resolve(FrameSpec(construction=Construction.ORTHONORMAL, n_t=params.n_t))
    proposed_model = SinrModel.from_db(
        params.m, proposed.n_beams, params.snr_db, frame_delta_hat_sq(registry, proposed)
    )
    baseline_model = SinrModel.from_db(params.m, baseline.n_beams, params.snr_db, 0.0)

    result = ExperimentResult(columns=COLUMNS)
    for users in params.k_values:
        proposed_sim = _simulate(proposed, users, params, registry)
        baseline_sim = _simulate(baseline, users, params, registry)
        row = {
            "n_t": params.n_t,
            "K": users,
            "m": format_significant(params.m, DIGITS),
            "snr_db": format_significant(params.snr_db, DIGITS),
            "proposed": proposed.label,
            "proposed_sim": format_significant(proposed_sim, DIGITS),
            "proposed_closed_form": "",
            "baseline_sim": format_significant(baseline_sim, DIGITS),
            "baseline_closed_form": "",
            "difference": format_significant(proposed_sim - baseline_sim, DIGITS),
            "error": "",
        }
        if users >= 2:
            try:
                row["proposed_closed_form"] = format_significant(
                    throughput_closed_form(proposed_model, users), DIGITS
                )
                row["baseline_closed_form"] = format_significant(
                    throughput_closed_form(baseline_model, users), DIGITS
                )
            except ConvergenceError as e:
                logger.error(f"Closed form failed for K={users}: {e}")
                row["error"] = str(e)
                result.failures += 1
        result.rows.append(row)
    return result


def _overrides(args: argparse.Namespace) -> dict:
    overrides = {}
    if args.nt is not None:
        overrides["n_t"] = args.nt
    if args.m is not None:
        overrides["m"] = args.m
    if args.snr is not None:
        overrides["snr_db"] = args.snr
    if args.k is not None:
        overrides["k_values"] = parse_k_values(args.k)
    if args.slots is not None:
        overrides["slots"] = args.slots
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    return overrides


def register(subparsers) -> None:
    parser = subparsers.add_parser("compare", help="Proposed frame versus the orthogonal baseline")
    parser.add_argument("--nt", type=int, help="Antenna count N_t (2, 3 or 4)")
    parser.add_argument("--m", type=float, help="Fading parameter")
    parser.add_argument("--snr", type=float, help="SNR in dB")
    parser.add_argument("--k", help="User counts: list '16,64' or doubling range '16:128'")
    parser.add_argument("--slots", type=int, help="Monte Carlo slots per point")
    parser.add_argument("--seed", type=int, help="Master seed")
    parser.set_defaults(kind=ExperimentKind.COMPARE_ORTHOGONAL, overrides=_overrides)
