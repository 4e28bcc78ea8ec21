"""Exact rationals.

Values are :class:`fractions.Fraction`, which already keeps the canonical form
used throughout the package: integer numerator carrying the sign, positive
denominator, and ``gcd(|num|, den) == 1``.  The helpers here add the total
conventions (``n/0 == 0``, ``0⁻¹ == 0``), the nonnegative subtype used for LP
weights, and the text syntax.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_RAT_RE = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")
_DEC_RE = re.compile(r"\s*[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?\s*$")


def mk_rat(n: int, d: int) -> Fraction:
    """Return ``n / d`` reduced; a zero denominator gives 0."""
    if d < 0:
        raise ValueError("denominator must be a natural number")
    if d == 0:
        return ZERO
    g = gcd(n, d)
    return Fraction(n // g, d // g)


def rat_add(a: Fraction, b: Fraction) -> Fraction:
    return mk_rat(a.numerator * b.denominator + b.numerator * a.denominator,
                  a.denominator * b.denominator)


def rat_neg(a: Fraction) -> Fraction:
    return Fraction(-a.numerator, a.denominator)


def rat_sub(a: Fraction, b: Fraction) -> Fraction:
    return rat_add(a, rat_neg(b))


def rat_mul(a: Fraction, b: Fraction) -> Fraction:
    return mk_rat(a.numerator * b.numerator, a.denominator * b.denominator)


def rat_inv(a: Fraction) -> Fraction:
    """Multiplicative inverse, with ``rat_inv(0) == 0``."""
    if a.numerator == 0:
        return ZERO
    if a.numerator < 0:
        return Fraction(-a.denominator, -a.numerator)
    return Fraction(a.denominator, a.numerator)


def rat_div(a: Fraction, b: Fraction) -> Fraction:
    return rat_mul(a, rat_inv(b))


def rat_pow(q: Fraction, n: int) -> Fraction:
    """``q ** n`` for natural ``n`` by repeated squaring on both components.

    Powers of coprime integers stay coprime, so no reduction is needed.
    """
    if n < 0:
        raise ValueError("exponent must be a natural number")
    num, den = 1, 1
    base_num, base_den = q.numerator, q.denominator
    while n:
        if n & 1:
            num *= base_num
            den *= base_den
        base_num *= base_num
        base_den *= base_den
        n >>= 1
    return Fraction(num, den)


def is_canonical(q: Fraction) -> bool:
    return q.denominator > 0 and gcd(abs(q.numerator), q.denominator) == 1


class NNRat(Fraction):
    """A nonnegative rational; construction fails for negative values."""

    __slots__ = ()

    def __new__(cls, numerator=0, denominator=None):
        self = super().__new__(cls, numerator, denominator)
        if self < 0:
            raise ValueError(f"NNRat must be nonnegative, got {Fraction(self)}")
        return self

    def __repr__(self):
        return f"NNRat({self.numerator}, {self.denominator})"


def as_rat(value) -> Fraction:
    """Coerce ints, Fractions and rational strings to a Fraction.

    Floats are refused because they would silently lose exactness.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return Fraction(value)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rat(value)
    raise TypeError(f"cannot read {value!r} as an exact rational")


def parse_rat(text: str) -> Fraction:
    """Parse ``"n"``, ``"n/d"`` (unreduced allowed) or a decimal literal."""
    m = _RAT_RE.match(text)
    if m:
        num = int(m.group(1))
        if m.group(2) is None:
            return Fraction(num)
        den = int(m.group(2))
        if den == 0:
            raise ValueError(f"zero denominator in rational literal {text!r}")
        return mk_rat(num, den)
    if _DEC_RE.match(text):
        return Fraction(text.strip())
    raise ValueError(f"bad rational literal {text!r}")


def format_rat(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def to_decimal(q: Fraction, digits: int = 6) -> str:
    """Exact decimal rendering rounded half-to-even at ``digits`` places."""
    scaled = round(q * 10 ** digits)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    if digits == 0:
        return f"{sign}{scaled}"
    whole, frac = divmod(scaled, 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}"
