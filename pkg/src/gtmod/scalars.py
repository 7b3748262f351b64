"""Exact rational scalars.

Everything in the engine is computed over Q.  gmpy2.mpq is used when
available (same semantics as fractions.Fraction, considerably faster on
the divided-difference hot paths); Fraction is the fallback.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as RAT
except ImportError:  # pragma: no cover
    RAT = Fraction

ZERO = RAT(0)
ONE = RAT(1)
HALF = RAT(1, 2)


def rat(p, q=None):
    """Build an exact rational from ints, strings like '3/2', or rationals."""
    if q is not None:
        return RAT(p, q)
    if isinstance(p, str):
        return parse_rat(p)
    if isinstance(p, float):
        raise TypeError("floats are not exact; pass an int, string or rational")
    return RAT(p)


def parse_rat(text):
    """Parse 'p/q' or 'p' into an exact rational."""
    s = text.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return RAT(int(num), int(den))
    return RAT(int(s))


def fmt_rat(q):
    """Serialize a rational as 'p/q' (or 'p' when the denominator is 1)."""
    q = RAT(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_fraction(q):
    """Exact conversion to fractions.Fraction (for sympy interop)."""
    q = RAT(q)
    return Fraction(int(q.numerator), int(q.denominator))


def is_integer(q):
    return RAT(q).denominator == 1
