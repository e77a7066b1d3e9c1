"""Correlation table: Fourier, Grassmannian and MUB frames against the Welch bound."""

import argparse
import logging

from app.errors import ConstructionError
from app.experiments.output import ExperimentResult
from app.models import Construction, ExperimentKind, FrameSpec, Table1Params
from app.services.frames import (
    ConstructionRegistry,
    correlation_profile,
    fourier_correlation_closed_form,
    optimal_row_search,
    welch_lower_bound,
)
from app.utils import format_significant

logger = logging.getLogger(__name__)

COLUMNS = [
    "n_t",
    "n",
    "delta_0",
    "selected_rows",
    "delta_fourier",
    "delta_grassmannian",
    "delta_mub",
    "welch_bound",
    "delta_hat_sq",
]
DIGITS = 4


def _format_rows(rows: tuple[int, ...]) -> str:
    return "{" + ", ".join(str(r) for r in rows) + "}"


def _delta_of(
    registry: ConstructionRegistry, construction: Construction, n_t: int, n_beams: int
) -> float | None:
    spec = FrameSpec(construction=construction, n_t=n_t, n_beams=n_beams)
    try:
        frame = registry.build(spec)
    except ConstructionError:
        return None
    return correlation_profile(frame).delta_max


def table1_row(registry: ConstructionRegistry, n_t: int, n_beams: int) -> dict[str, str | int]:
    """One configuration: first-rows and optimized Fourier, Grassmannian, MUB, bound and delta_hat_sq."""
    delta_0 = max(fourier_correlation_closed_form(n_t, lag, n_beams) for lag in range(1, n_beams))
    rows, delta_fourier = optimal_row_search(n_t, n_beams)

    preferred = registry.preferred_for(n_t, n_beams)
    delta_hat_sq = correlation_profile(registry.build(preferred)).require_delta_hat_sq()

    return {
        "n_t": n_t,
        "n": n_beams,
        "delta_0": format_significant(delta_0, DIGITS),
        "selected_rows": _format_rows(rows),
        "delta_fourier": format_significant(delta_fourier, DIGITS),
        "delta_grassmannian": format_significant(
            _delta_of(registry, Construction.GRASSMANNIAN, n_t, n_beams), DIGITS
        ),
        "delta_mub": format_significant(_delta_of(registry, Construction.MUB, n_t, n_beams), DIGITS),
        "welch_bound": format_significant(welch_lower_bound(n_t, n_beams), DIGITS),
        "delta_hat_sq": format_significant(delta_hat_sq, DIGITS),
    }


def run_table1(params: Table1Params, registry: ConstructionRegistry) -> ExperimentResult:
    result = ExperimentResult(columns=COLUMNS)
    for n_t, n_beams in params.configs:
        logger.debug(f"Table row N_t={n_t}, N={n_beams}")
        result.rows.append(table1_row(registry, n_t, n_beams))
    return result


def _overrides(args: argparse.Namespace) -> dict:
    return {}


def register(subparsers) -> None:
    parser = subparsers.add_parser("table1", help="Minimum maximum correlation per (N_t, N)")
    parser.set_defaults(kind=ExperimentKind.TABLE1, overrides=_overrides)
