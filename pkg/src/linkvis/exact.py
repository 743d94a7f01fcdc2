"""Exact scalar arithmetic.

All coordinates are `fractions.Fraction` values.  Comparisons are exact;
nothing in the library ever goes through a float.  This module owns the
conversions at the text boundary: decimal strings in, decimal strings out.
"""

import re
from fractions import Fraction

Scalar = Fraction

_DECIMAL_RE = re.compile(r"^[+-]?(\d+)(\.(\d+))?$")


def parse_decimal(text: str, max_places: int = 12) -> Fraction:
    """Parse a plain decimal string to an exact Fraction.

    Scientific notation is rejected; at most `max_places` fractional
    digits are accepted so the value is representable without loss.
    """
    m = _DECIMAL_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a plain decimal number: {text!r}")
    frac = m.group(3) or ""
    if len(frac) > max_places:
        raise ValueError(
            f"{text!r} has {len(frac)} fractional digits (max {max_places})"
        )
    return Fraction(text)


def as_scalar(value) -> Fraction:
    """Coerce an int, decimal string, or Fraction to a Scalar.

    Floats are rejected: binary floats would silently corrupt the exact
    predicates downstream.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_decimal(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def format_fixed(value: Fraction, places: int = 9) -> str:
    """Round half-even to `places` fractional digits, as a decimal string.

    Display only; internal values stay exact.
    """
    scaled = value * 10**places
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r > scaled.denominator or (2 * r == scaled.denominator and q % 2):
        q += 1
    sign = "-" if q < 0 else ""
    q = abs(q)
    return f"{sign}{q // 10**places}.{q % 10**places:0{places}d}"


def format_exact_decimal(value: Fraction, max_places: int = 12) -> str:
    """Exact decimal representation, trailing zeros stripped.

    Raises ValueError if the value is not a decimal fraction with at most
    `max_places` places (i.e. round-tripping would lose exactness).
    """
    if 10**max_places % value.denominator != 0:
        raise ValueError(f"{value} is not exactly decimal within {max_places} places")
    scaled = value * 10**max_places
    digits = abs(int(scaled))
    sign = "-" if value < 0 else ""
    whole, frac = divmod(digits, 10**max_places)
    if frac == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}." + f"{frac:0{max_places}d}".rstrip("0")
