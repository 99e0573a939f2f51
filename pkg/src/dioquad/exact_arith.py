"""Exact scalar layer: big integers, normalized rationals, square detection.

Rationals are :class:`fractions.Fraction`, which already keeps
``gcd(|p|, q) == 1`` and ``q >= 1``. This module adds the exact square-root
tests and the ``"p/q"`` text encoding used by every file format.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

Rational = Fraction

_RATIONAL_RE = re.compile(r"[+-]?\d+(/\d+)?")


def integer_sqrt_exact(n: int) -> int | None:
    """Return ``r >= 0`` with ``r*r == n``, or None if n is not a perfect square."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def rational_sqrt_exact(q) -> Fraction | None:
    """Nonnegative exact square root of a rational, or None.

    Valid componentwise because the fraction is in lowest terms.
    """
    q = Fraction(q)
    num = integer_sqrt_exact(q.numerator)
    if num is None:
        return None
    den = integer_sqrt_exact(q.denominator)
    if den is None:
        return None
    return Fraction(num, den)


def is_rational_square(q) -> bool:
    return rational_sqrt_exact(q) is not None


def to_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"``, ``"-p"``, ``"+p/q"``; no whitespace, no decimals."""
    if not isinstance(text, str) or not _RATIONAL_RE.fullmatch(text):
        raise ValueError(f"malformed rational: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
