"""Scalar backends and small exact/extended-precision linear algebra.

Two backends coexist:

* exact: ``int`` and ``fractions.Fraction`` values, used for determinants,
  roundtrips and anything that must hold identically;
* floating: ``mpmath.mpf`` at the current ``mp.dps`` (30 digits by default).

Functions in this package are written against ordinary arithmetic so either
backend flows through unchanged; these helpers handle the few places where the
two must be told apart.
"""

from __future__ import annotations

import contextlib
import math
from fractions import Fraction
from numbers import Rational
from typing import Iterator, Sequence

import mpmath
from mpmath import mp

DEFAULT_DIGITS = 30

if mp.dps < DEFAULT_DIGITS:
    mp.dps = DEFAULT_DIGITS


class PrecisionError(ArithmeticError):
    pass


def is_exact(value) -> bool:
    return isinstance(value, Rational)


def all_exact(values) -> bool:
    return all(is_exact(v) for v in values)


def coerce(value):
    """Exact rationals become ``Fraction``; everything else becomes ``mpf``."""
    if isinstance(value, bool):
        value = int(value)
    if isinstance(value, Fraction):
        return value
    if is_exact(value):
        return Fraction(value)
    return to_mpf(value)


def unify(values) -> list:
    """Coerce a group of values to one backend: all exact, or all ``mpf``.

    Fraction - mpf and Fraction / mpf are unsupported, so mixed groups are
    promoted to floating point before any arithmetic happens.
    """
    vals = [coerce(v) for v in values]
    if all_exact(vals):
        return vals
    return [to_mpf(v) for v in vals]


def to_mpf(value):
    """Coerce ints, Fractions, floats and numeric strings to ``mpf``."""
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return value
    return mpmath.mpf(value)


def parse_scalar(text: str, exact: bool = False):
    """Parse a CLI scalar. ``exact`` keeps decimals/ratios as Fractions."""
    text = text.strip()
    if exact:
        return Fraction(text)
    if "/" in text:
        return to_mpf(Fraction(text))
    return mpmath.mpf(text)


def epsilon():
    """Unit roundoff of the current floating context."""
    return mpmath.mpf(10) ** (-mp.dps)


@contextlib.contextmanager
def precision(digits: int | None) -> Iterator[None]:
    if digits is None:
        yield
        return
    with mp.workdps(digits):
        yield


def fmt(value, digits: int | None = None) -> str:
    """Deterministic decimal string at full working precision."""
    if value is None:
        return "null"
    if is_exact(value):
        value = to_mpf(value)
    return mpmath.nstr(value, digits or mp.dps, strip_zeros=False, min_fixed=-8, max_fixed=8)


def power(base, exponent):
    """``base**exponent`` that stays exact for integer exponents.

    Non-integral rational exponents use the real principal root.
    """
    if isinstance(exponent, Fraction) and exponent.denominator == 1:
        exponent = exponent.numerator
    if isinstance(exponent, int):
        if exponent < 0:
            if is_exact(base):
                return Fraction(1) / Fraction(base) ** (-exponent)
            return 1 / base ** (-exponent)
        return base ** exponent
    b = to_mpf(base)
    if b < 0:
        raise ValueError("fractional power of a negative base")
    return b ** to_mpf(exponent)


# -- determinants ----------------------------------------------------------


def bareiss_det(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Rational entries are cleared to integers row by row first so every
    intermediate quantity is an integer.
    """
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    rows = []
    scale = Fraction(1)
    for row in matrix:
        fr = [Fraction(v) for v in row]
        lcm = math.lcm(*(v.denominator for v in fr))
        rows.append([int(v * lcm) for v in fr])
        scale /= lcm
    m = rows
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return Fraction(sign * m[n - 1][n - 1]) * scale


def det(matrix: Sequence[Sequence]):
    """Determinant: Bareiss for exact entries, pivoted LU (mpmath) otherwise."""
    n = len(matrix)
    if n == 0:
        return 1
    if all(all_exact(row) for row in matrix):
        return bareiss_det(matrix)
    M = mpmath.matrix([[to_mpf(v) for v in row] for row in matrix])
    try:
        return mpmath.det(M)
    except (TypeError, ZeroDivisionError):
        # mpmath's LU fails outright when a column has no nonzero pivot
        return mpmath.mpf(0)


def hankel(seq: Sequence, start: int, size: int) -> list[list]:
    """``size x size`` Hankel matrix with top-left entry ``seq[start]``."""
    return [[seq[start + i + j] for j in range(size)] for i in range(size)]
