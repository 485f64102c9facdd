"""Exact rational scalars: Pochhammer symbols, parsing and formatting.

Every scalar in this package is an exact rational, carried either as ``int``
or as ``fractions.Fraction``.  Plain ints are kept as a fast path (integer
parameter runs stay in bignum integer arithmetic); the two interoperate
exactly, so no coercion is ever forced.  There is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


class DegeneracyError(ValueError):
    """A parameter choice makes a required factor vanish.

    The message names the offending factor so that reports can surface it.
    """


def pochhammer(a: Rational, n: int) -> Rational:
    """Rising factorial a(a+1)...(a+n-1); the empty product 1 for n = 0."""
    if n < 0:
        raise ValueError(f"pochhammer length must be nonnegative, got {n}")
    out: Rational = 1
    for k in range(n):
        out *= a + k
    return out


def sign(value: Rational) -> int:
    """Return -1, 0 or +1."""
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' (or a bare integer 'p') into an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(value: Rational) -> str:
    """Render as 'p/q' in lowest terms, or 'p' when the denominator is 1."""
    return str(value) if isinstance(value, int) else str(Fraction(value))
