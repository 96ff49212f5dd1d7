"""Exact rational parsing and formatting.

All scalars in the package are :class:`fractions.Fraction`; floats are never
accepted as input.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


class ParseError(ValueError):
    """Raised for malformed textual input (rationals, partitions)."""


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a reduced Fraction.

    Decimal notation is rejected on purpose, so that no float ever leaks in.
    """
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, Rational):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"not a rational: {text!r}")
    s = text.strip().replace("−", "-")
    match = _RATIONAL_RE.match(s)
    if match is None:
        raise ParseError(f"not an exact rational (use p/q): {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def frac_part(x: Fraction) -> Fraction:
    """Fractional part ``x - floor(x)``, always in [0, 1)."""
    return x - (x.numerator // x.denominator)


def is_integer(x: Fraction) -> bool:
    return Fraction(x).denominator == 1
