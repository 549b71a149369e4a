"""Precision kernel: decimal working precision, exact rationals, exact determinants.

Reals are :class:`decimal.Decimal` values evaluated inside a local decimal
context, so precision is per-thread and never leaks between callers.
Rationals are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import decimal
import math
from contextlib import contextmanager
from decimal import Decimal
from fractions import Fraction
from typing import Iterator, Sequence, Union

from .errors import DimensionError, DomainError

MIN_PRECISION = 30
MAX_PRECISION = 200
DEFAULT_PRECISION = 50
# extra digits carried inside long summations; results are rounded back to P
GUARD_DIGITS = 10

Number = Union[int, Fraction, Decimal, str]


def check_precision(prec: int) -> int:
    if not isinstance(prec, int) or not MIN_PRECISION <= prec <= MAX_PRECISION:
        raise DomainError(f"precision must be an integer in [{MIN_PRECISION}, {MAX_PRECISION}], got {prec!r}")
    return prec


@contextmanager
def working_precision(prec: int) -> Iterator[decimal.Context]:
    """Run a block with ``prec`` significant digits and round-half-even.

    The exponent range is opened up completely: q-series exponents grow
    quadratically and must underflow to zero gracefully rather than trap.
    """
    with decimal.localcontext() as ctx:
        ctx.prec = prec
        ctx.rounding = decimal.ROUND_HALF_EVEN
        ctx.Emax = decimal.MAX_EMAX
        ctx.Emin = decimal.MIN_EMIN
        ctx.traps[decimal.Underflow] = False
        ctx.traps[decimal.Subnormal] = False
        yield ctx


def parse_rational(text: str) -> Fraction:
    """Parse ``"2"``, ``"0.5"``, ``"1/3"`` or ``"1e-3"`` into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational number: {text!r}") from exc


def real_from_rat(r: Fraction | int, prec: int = DEFAULT_PRECISION) -> Decimal:
    """Correctly rounded decimal value of an exact rational.

    >>> real_from_rat(Fraction(-21, 8))
    Decimal('-2.625')
    """
    check_precision(prec)
    return _rat_to_real(Fraction(r), prec)


def _rat_to_real(r: Fraction, prec: int) -> Decimal:
    with working_precision(prec):
        return Decimal(r.numerator) / Decimal(r.denominator)


def to_real(x: Number, prec: int = DEFAULT_PRECISION) -> Decimal:
    """Coerce ints, Fractions, Decimals and numeric strings to a Decimal at ``prec``.

    No range check on ``prec``: internal callers add guard digits on top of
    an already validated precision.
    """
    if isinstance(x, Fraction):
        return _rat_to_real(x, prec)
    if isinstance(x, str):
        return _rat_to_real(parse_rational(x), prec)
    if isinstance(x, float):
        x = Decimal(x)
    with working_precision(prec):
        return +Decimal(x)


def approx_equal(a, b, tol) -> bool:
    """True iff ``|a - b| <= tol`` (computed exactly; no rounding)."""
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    a, b, tol = (Fraction(v) if not isinstance(v, str) else parse_rational(v) for v in (a, b, tol))
    return abs(a - b) <= tol


def format_fixed(x: Decimal, digits: int) -> str:
    """Round half-even to ``digits`` places after the decimal point."""
    with working_precision(max(MIN_PRECISION, digits + x.adjusted() + 5)):
        r = x.quantize(Decimal(1).scaleb(-digits))
        if r.is_zero():
            r = abs(r)
        return format(r, "f")


def exact_det(matrix: Sequence[Sequence[Fraction | int]]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Each row is first scaled to integers by the lcm of its denominators, the
    Bareiss recurrence then runs purely over the integers, and the scaling is
    divided back out at the end.
    """
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise DimensionError("exact_det needs a non-empty square matrix")

    rows: list[list[int]] = []
    scale = 1
    for row in matrix:
        fr = [Fraction(v) for v in row]
        m = math.lcm(*(v.denominator for v in fr))
        scale *= m
        rows.append([v.numerator * (m // v.denominator) for v in fr])

    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = rows[k][k]
        for i in range(k + 1, n):
            rik = rows[i][k]
            ri = rows[i]
            rk = rows[k]
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                ri[j] = (pivot * ri[j] - rik * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return Fraction(sign * rows[n - 1][n - 1], scale)
