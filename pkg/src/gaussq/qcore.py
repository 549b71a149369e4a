"""q-Pochhammer symbols and the polygonal-number exponent."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from .errors import DomainError, SingularParameterError
from .numerics import DEFAULT_PRECISION, GUARD_DIGITS, Number, check_precision, to_real, working_precision


@dataclass(frozen=True)
class QParam:
    """A validated base ``q > 0, q != 1`` together with ``p = 1/q``."""

    q: Decimal
    p: Decimal
    prec: int = DEFAULT_PRECISION

    @classmethod
    def from_value(cls, q: Number, prec: int = DEFAULT_PRECISION) -> "QParam":
        check_precision(prec)
        qd = to_real(q, prec)
        if qd <= 0:
            raise DomainError(f"q must be positive, got {qd}")
        with working_precision(prec):
            if abs(qd - 1) <= Decimal(10) ** (-(prec - 5)):
                raise SingularParameterError("q = 1 is a singular parameter")
            return cls(qd, 1 / qd, prec)

    @property
    def above_one(self) -> bool:
        return self.q > 1


def qpoch(alpha, q, n: int, prec: int | None = None):
    """Finite q-Pochhammer symbol ``(alpha; q)_n = prod_{k<n} (1 - alpha q^k)``.

    Works for any number type that supports ``*`` and ``-``. With ``prec``
    the inputs are converted to Decimals and the product is formed at that
    precision; without it Decimal inputs round in the caller's context.
    """
    if n < 0:
        raise DomainError("n must be non-negative")
    if prec is not None:
        alpha, q = to_real(alpha, prec), to_real(q, prec)
        with working_precision(prec):
            return +Decimal(qpoch(alpha, q, n))
    result = 1
    term = alpha
    for _ in range(n):
        result *= 1 - term
        term *= q
    return result


def qpoch_rat(alpha: Fraction | int, q: Fraction | int, n: int) -> Fraction:
    """Exact rational ``(alpha; q)_n``."""
    return Fraction(qpoch(Fraction(alpha), Fraction(q), n))


def qpoch_inf(alpha: Number, q: Number, prec: int = DEFAULT_PRECISION) -> Decimal:
    """Infinite product ``(alpha; q)_inf`` for ``|q| < 1``.

    Factors are multiplied in until ``|alpha q^n|`` drops below ``10^-(P+10)``.
    """
    check_precision(prec)
    result = _qpoch_inf(alpha, q, prec)
    with working_precision(prec):
        return +result


def _qpoch_inf(alpha: Number, q: Number, prec: int) -> Decimal:
    """Unrounded product at ``prec + GUARD_DIGITS``; no precision range check."""
    work = prec + GUARD_DIGITS
    a = to_real(alpha, work)
    qd = to_real(q, work)
    if abs(qd) >= 1:
        raise DomainError("(alpha; q)_inf needs |q| < 1")
    with working_precision(work):
        eps = Decimal(10) ** (-(prec + 10))
        result = Decimal(1)
        term = a
        while abs(term) >= eps:
            result *= 1 - term
            term *= qd
        return result


def polygonal_exponent(rho: int, n: int) -> int:
    """``n[(rho-2)n - (rho-4)]/2``: the n-th rho-gonal number.

    >>> [polygonal_exponent(5, n) for n in range(5)]
    [0, 1, 5, 12, 22]
    """
    if rho < 3:
        raise DomainError(f"rho must be >= 3, got {rho}")
    if n < 0:
        raise DomainError("n must be non-negative")
    return n * ((rho - 2) * n - (rho - 4)) // 2
