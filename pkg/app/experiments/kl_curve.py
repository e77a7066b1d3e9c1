"""KL distance between the exact maximum-SINR law and its Gumbel limit over a grid of K."""

import argparse
import logging

from app.errors import ConvergenceError
from app.experiments.output import ExperimentResult
from app.models import ExperimentKind, KlCurveParams, SinrModel
from app.services.evt import kl_divergence
from app.utils import format_significant, parse_k_values, parse_number_list

logger = logging.getLogger(__name__)

COLUMNS = ["m", "K", "kl_bits", "error"]


def run_kl_curve(params: KlCurveParams) -> ExperimentResult:
    """One row per (m, K); rows whose quadrature fails carry the error and the run continues."""
    result = ExperimentResult(columns=COLUMNS)
    for m in params.m_values:
        model = SinrModel.from_db(m, params.n_beams, params.snr_db, params.delta_hat_sq)
        for users in params.k_values:
            row = {"m": format_significant(m, 6), "K": users, "kl_bits": "", "error": ""}
            try:
                row["kl_bits"] = format_significant(kl_divergence(model, users).divergence, 6)
            except ConvergenceError as e:
                logger.error(f"KL failed for m={m}, K={users}: {e}")
                row["error"] = str(e)
                result.failures += 1
            result.rows.append(row)
    return result


def _overrides(args: argparse.Namespace) -> dict:
    overrides = {}
    if args.m is not None:
        overrides["m_values"] = parse_number_list(args.m, float)
    if args.k is not None:
        overrides["k_values"] = parse_k_values(args.k)
    if args.snr is not None:
        overrides["snr_db"] = args.snr
    if args.n is not None:
        overrides["n_beams"] = args.n
    if args.delta_hat_sq is not None:
        overrides["delta_hat_sq"] = args.delta_hat_sq
    return overrides


def register(subparsers) -> None:
    parser = subparsers.add_parser("kl", help="KL distance of the Gumbel limit versus K")
    parser.add_argument("--m", help="Fading parameters, e.g. 0.5,3")
    parser.add_argument("--k", help="User counts: list '8,16' or doubling range '8:2048'")
    parser.add_argument("--snr", type=float, help="SNR in dB")
    parser.add_argument("--n", type=int, help="Beam count N")
    parser.add_argument("--delta-hat-sq", type=float, help="Interference constant")
    parser.set_defaults(kind=ExperimentKind.KL_CURVE, overrides=_overrides)
