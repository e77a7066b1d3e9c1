"""Single Monte Carlo throughput estimate for one configuration."""

import argparse

from app.experiments.output import ExperimentResult
from app.models import ExperimentKind, FrameSpec, SimulationConfig, ThroughputReport
from app.services.channel import monte_carlo
from app.services.frames import ConstructionRegistry


def run_simulate(sim: SimulationConfig, registry: ConstructionRegistry) -> ExperimentResult:
    report = monte_carlo(sim, registry)
    return ExperimentResult(
        columns=list(ThroughputReport.CSV_COLUMNS),
        rows=[report.to_csv_row()],
        extra={"beam_counts": report.beam_counts},
    )


def _overrides(args: argparse.Namespace) -> dict:
    overrides = {}
    if args.frame is not None:
        overrides["frame"] = FrameSpec.parse(args.frame).model_dump()
    if args.k is not None:
        overrides["users"] = args.k
    if args.m is not None:
        overrides["m"] = args.m
    if args.snr is not None:
        overrides["snr_db"] = args.snr
    if args.slots is not None:
        overrides["slots"] = args.slots
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    return overrides


def register(subparsers) -> None:
    parser = subparsers.add_parser("simulate", help="Monte Carlo throughput of one configuration")
    parser.add_argument("--frame", help="Frame as key:NTxN, e.g. grassmannian:3x7")
    parser.add_argument("--k", type=int, help="User count K")
    parser.add_argument("--m", type=float, help="Fading parameter")
    parser.add_argument("--snr", type=float, help="SNR in dB")
    parser.add_argument("--slots", type=int, help="Monte Carlo slots")
    parser.add_argument("--seed", type=int, help="Master seed")
    parser.set_defaults(kind=ExperimentKind.SIMULATE, overrides=_overrides)
