"""Pairwise correlation report of a single frame, with optional JSON export of the matrix."""

import argparse
import logging

from app.config import config
from app.experiments.output import ExperimentResult
from app.models import Construction, ExperimentKind, FrameSpec, FramesReportParams
from app.services.frames import ConstructionRegistry, correlation_profile, welch_lower_bound
from app.services.numerics import derive_stream
from app.utils import format_significant

logger = logging.getLogger(__name__)

COLUMNS = ["l", "n", "lag", "correlation"]
DIGITS = 6


def run_frames_report(params: FramesReportParams, registry: ConstructionRegistry) -> ExperimentResult:
    spec = registry.resolve(params.frame)
    stream = None
    if spec.construction == Construction.ORTHONORMAL:
        stream = derive_stream(config.default_seed, 0)
    frame = registry.build(spec, stream)
    profile = correlation_profile(frame)

    result = ExperimentResult(columns=COLUMNS)
    n_beams = frame.n_beams
    for l in range(1, n_beams + 1):
        for n in range(l + 1, n_beams + 1):
            result.rows.append(
                {
                    "l": l,
                    "n": n,
                    "lag": (n - l) % n_beams,
                    "correlation": format_significant(float(profile.pairwise[l - 1, n - 1]), DIGITS),
                }
            )

    result.extra = {
        "frame": frame.to_dict(),
        "delta_max": profile.delta_max,
        "welch_bound": welch_lower_bound(frame.n_t, n_beams),
        "delta_hat_sq": profile.delta_hat_sq,
        "per_column_delta_sq": [float(v) for v in profile.per_column_delta_sq],
    }

    if params.export_path is not None:
        params.export_path.parent.mkdir(parents=True, exist_ok=True)
        params.export_path.write_text(frame.to_json() + "\n", encoding="utf-8")
        logger.info(f"Exported {spec.label} to {params.export_path}")
    return result


def _overrides(args: argparse.Namespace) -> dict:
    overrides = {}
    if args.frame is not None:
        overrides["frame"] = FrameSpec.parse(args.frame).model_dump()
    if args.export is not None:
        overrides["export_path"] = args.export
    return overrides


def register(subparsers) -> None:
    parser = subparsers.add_parser("frames", help="Frame inspection")
    actions = parser.add_subparsers(dest="frames_action", required=True)
    report = actions.add_parser("report", help="Pairwise correlations of one frame")
    report.add_argument("--frame", help="Frame as key:NTxN, e.g. mub:4x16")
    report.add_argument("--export", help="Write the frame matrix as JSON to this file")
    report.set_defaults(kind=ExperimentKind.FRAMES_REPORT, overrides=_overrides)
