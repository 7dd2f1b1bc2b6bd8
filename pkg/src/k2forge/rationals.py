"""Exact rational scalars.

All scalar arithmetic in this package runs on `fractions.Fraction`, which
already guarantees the canonical form we rely on everywhere: reduced,
positive denominator, structural equality.  This module adds the few
helpers the rest of the code needs (parsing/printing the "p/q" wire
format and integrality tests).
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(value, den=None) -> Fraction:
    """Build a Fraction from ints, strings like "-3/4", or another Fraction."""
    if den is not None:
        return Fraction(value, den)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot build exact rational from {value!r}")


def rat_str(q: Fraction) -> str:
    """Serialize as "p" or "p/q" (never a float)."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def is_integer(q: Fraction) -> bool:
    return Fraction(q).denominator == 1


def sqrt_exact(q: Fraction):
    """Return the nonnegative square root if ``q`` is a perfect square, else None."""
    q = Fraction(q)
    if q < 0:
        return None
    sn, sd = isqrt(q.numerator), isqrt(q.denominator)
    if sn * sn == q.numerator and sd * sd == q.denominator:
        return Fraction(sn, sd)
    return None
