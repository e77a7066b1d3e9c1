"""Experiments package.

One module per experiment kind. Each module exposes a run function and a
register(subparsers) hook that adds its command line flags.
"""

import json
import logging

from app.experiments import compare, frames_report, kl_curve, simulate, table1, throughput_curve, verify
from app.experiments.compare import run_compare_orthogonal
from app.experiments.frames_report import run_frames_report
from app.experiments.kl_curve import run_kl_curve
from app.experiments.output import ExperimentResult, render, write_result
from app.experiments.simulate import run_simulate
from app.experiments.table1 import run_table1
from app.experiments.throughput_curve import run_throughput_curve
from app.experiments.verify import CheckResult, VerifyReport, run_verify
from app.logging import log_experiment
from app.models import ExperimentKind, ExperimentSpec
from app.services.frames import ConstructionRegistry, get_registry

logger = logging.getLogger(__name__)

COMMAND_MODULES = [table1, kl_curve, throughput_curve, compare, frames_report, simulate, verify]


def register_commands(subparsers) -> None:
    """Register all experiment subcommands with the CLI."""
    for module in COMMAND_MODULES:
        module.register(subparsers)


def run_experiment(spec: ExperimentSpec, registry: ConstructionRegistry | None = None) -> ExperimentResult:
    """Run a validated experiment spec and return its result table."""
    registry = registry or get_registry()
    params = spec.parameters
    summary = json.dumps(params.model_dump(mode="json"), sort_keys=True)

    with log_experiment(spec.kind, summary):
        match spec.kind:
            case ExperimentKind.TABLE1:
                result = run_table1(params, registry)
            case ExperimentKind.KL_CURVE:
                result = run_kl_curve(params)
            case ExperimentKind.THROUGHPUT_CURVE:
                result = run_throughput_curve(params, registry)
            case ExperimentKind.COMPARE_ORTHOGONAL:
                result = run_compare_orthogonal(params, registry)
            case ExperimentKind.FRAMES_REPORT:
                result = run_frames_report(params, registry)
            case ExperimentKind.SIMULATE:
                result = run_simulate(params, registry)

    if result.failures:
        logger.warning(f"{spec.kind}: {result.failures} rows did not converge")
    return result


__all__ = [
    "CheckResult",
    "ExperimentResult",
    "VerifyReport",
    "register_commands",
    "render",
    "run_experiment",
    "run_verify",
    "write_result",
]
