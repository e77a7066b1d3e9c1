"""
Command line front end.

Usage:
    obsim [--config FILE] [--output PATH] [--format csv|json] [--workers N] <command> [flags]

Commands: table1, kl, throughput, compare, frames report, simulate, verify.
A config file is a JSON ExperimentSpec; command flags override its parameters.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from app import __version__
from app.errors import ConvergenceError, ObsimError, SpecError
from app.experiments import register_commands, run_experiment, run_verify, write_result
from app.experiments.verify import verify_arguments
from app.logging import setup_logging
from app.models import PARAMETER_MODELS, ExperimentKind, ExperimentSpec, MonteCarloSettings, OutputFormat
from app.utils import ensure_utf8_encoding

logger = logging.getLogger(__name__)

VERIFY_FAILED = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="obsim",
        description="Opportunistic beamforming frames, extreme-value throughput analysis and simulation",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", type=Path, help="JSON experiment spec; flags override its parameters")
    parser.add_argument("--output", type=Path, help="Output file (stdout when omitted)")
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], help="Output format")
    parser.add_argument("--workers", type=int, help="Worker processes for Monte Carlo runs")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")

    subparsers = parser.add_subparsers(dest="command", required=True)
    register_commands(subparsers)
    return parser


def load_spec_file(path: Path) -> dict[str, Any]:
    """Read a JSON experiment spec file."""
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise SpecError(f"Config file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise SpecError(f"Config file {path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise SpecError(f"Config file {path} must hold a JSON object")
    return data


def build_spec(args: argparse.Namespace) -> ExperimentSpec:
    """Merge the config file (if any) with the command flags into a validated spec."""
    kind = ExperimentKind(args.kind)
    data = load_spec_file(args.config) if args.config else {}

    if "kind" in data and data["kind"] != kind.value:
        raise SpecError(f"Config file describes '{data['kind']}' but the command runs '{kind}'")

    parameters = dict(data.get("parameters") or {})
    parameters.update(args.overrides(args))
    if args.workers is not None and issubclass(PARAMETER_MODELS[kind], MonteCarloSettings):
        parameters["workers"] = args.workers

    output = dict(data.get("output") or {})
    if args.output is not None:
        output["path"] = str(args.output)
    if args.format is not None:
        output["format"] = args.format

    return ExperimentSpec.model_validate({"kind": kind, "parameters": parameters, "output": output})


def _run_verify(args: argparse.Namespace) -> int:
    report = run_verify(**verify_arguments(args))
    text = report.to_json()
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.parent.mkdir(parents=True, exist_ok=True)
        args.output.write_text(text, encoding="utf-8")
        logger.info(f"Wrote verification report to {args.output}")
    return 0 if report.passed else VERIFY_FAILED


def main(argv: list[str] | None = None) -> int:
    """Entry point; returns the process exit code."""
    ensure_utf8_encoding()
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.log_level:
        setup_logging(args.log_level.upper())

    try:
        if args.command == "verify":
            return _run_verify(args)

        spec = build_spec(args)
        result = run_experiment(spec)
        write_result(result, spec)
        return ConvergenceError.exit_code if result.failures else 0
    except ValidationError as e:
        logger.error(f"Invalid experiment spec: {e}")
        return SpecError.exit_code
    except ObsimError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
