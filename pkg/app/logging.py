"""
Logging configuration for the simulation toolkit.

Provides basic logging setup and per-experiment run logging with timing and a run id.
"""

import logging
import sys
import time
import uuid
from collections.abc import Iterator
from contextlib import contextmanager

logger = logging.getLogger(__name__)


def setup_logging(level: str | int = logging.INFO) -> logging.Logger:
    """Configure the root logger for command-line runs and tests.

    Log records go to stderr so that CSV/JSON written to stdout stays parseable.
    """
    logger = logging.getLogger()
    logger.setLevel(level)

    # Remove existing handlers to avoid duplicates
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    # Console handler with millisecond precision
    formatter = logging.Formatter(
        "%(asctime)s.%(msecs)03d - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    # Silence noisy loggers
    logging.getLogger("numexpr").setLevel(logging.WARNING)

    return logger


@contextmanager
def log_experiment(kind: str, spec_summary: str | None = None) -> Iterator[str]:
    """Log the start and end of an experiment run.

    Args:
        kind: Experiment kind (table1, kl_curve, ...)
        spec_summary: Resolved spec, already serialized

    Yields:
        Short run id used to correlate the log lines of one run
    """
    run_id = uuid.uuid4().hex[:8]
    start_time = time.perf_counter()

    log_parts = [f"RUN [{run_id}]", f"Kind: {kind}"]
    if spec_summary:
        body = spec_summary if len(spec_summary) <= 400 else spec_summary[:400] + "..."
        log_parts.append(f"Spec: {body}")
    logger.info(" | ".join(log_parts))

    try:
        yield run_id
    except Exception as e:
        duration_ms = round((time.perf_counter() - start_time) * 1000, 2)
        logger.error(f"RUN [{run_id}] failed after {duration_ms}ms: {type(e).__name__}: {e}")
        raise

    duration_ms = round((time.perf_counter() - start_time) * 1000, 2)
    logger.info(f"RUN [{run_id}] finished | Duration: {duration_ms}ms")
