"""
Utility functions for the application.

This module provides general purpose utilities: unit conversion, number formatting
for the emitted tables and parsing of list/range arguments.
"""

import logging
import math
import sys

from app.errors import SpecError

logger = logging.getLogger(__name__)


def db_to_linear(snr_db: float) -> float:
    """Convert an SNR in dB to a linear power ratio.

    Args:
        snr_db: SNR in decibels

    Returns:
        10 ** (snr_db / 10)
    """
    return 10.0 ** (snr_db / 10.0)


def linear_to_db(rho: float) -> float:
    """Convert a linear power ratio to dB."""
    if rho <= 0:
        raise SpecError(f"Linear SNR must be positive, got {rho}")
    return 10.0 * math.log10(rho)


def format_significant(value: float | None, digits: int) -> str:
    """Format a number with a fixed count of significant digits.

    Args:
        value: Number to format; None and NaN become an empty cell
        digits: Significant digits

    Returns:
        String representation, '' for missing values
    """
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return f"{value:.{digits}g}"


def float_to_hex(value: float) -> str:
    """Lossless text form of a float (C99 hex-float)."""
    return float(value).hex()


def float_from_text(value: str | float) -> float:
    """Parse a float written either as hex-float or as a decimal literal."""
    if isinstance(value, int | float):
        return float(value)
    text = value.strip()
    if "0x" in text.lower() or text.lower() in ("inf", "-inf", "nan"):
        return float.fromhex(text)
    return float(text)


def parse_number_list(text: str, cast=float) -> list:
    """Parse a comma separated list ('0.5,3') into numbers.

    Args:
        text: Comma separated values
        cast: Conversion applied to each item (float or int)

    Returns:
        List of converted values
    """
    try:
        return [cast(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise SpecError(f"Cannot parse list '{text}': {e}") from e


def parse_k_values(text: str) -> list[int]:
    """Parse user counts given as a list ('16,64') or a doubling range ('8:2048').

    A range 'lo:hi' expands to lo, 2*lo, 4*lo, ... up to and including hi.
    A range 'lo:hi:step' expands linearly with the given step.
    """
    if ":" not in text:
        return parse_number_list(text, int)

    parts = text.split(":")
    try:
        numbers = [int(p) for p in parts]
    except ValueError as e:
        raise SpecError(f"Cannot parse user range '{text}': {e}") from e

    if len(numbers) == 2:
        lo, hi = numbers
        if lo < 1 or hi < lo:
            raise SpecError(f"Invalid user range '{text}'")
        values = []
        k = lo
        while k <= hi:
            values.append(k)
            k *= 2
        return values

    if len(numbers) == 3:
        lo, hi, step = numbers
        if lo < 1 or hi < lo or step < 1:
            raise SpecError(f"Invalid user range '{text}'")
        return list(range(lo, hi + 1, step))

    raise SpecError(f"Invalid user range '{text}'")


def ensure_utf8_encoding():
    """Ensure stdout and stderr are using UTF-8 encoding."""
    for stream in (sys.stdout, sys.stderr):
        encoding = (getattr(stream, "encoding", None) or "").lower()
        if encoding != "utf-8" and hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
