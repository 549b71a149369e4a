"""Summation engine for the polygonal (S1) and Pochhammer (S2) families.

For ``q < 1`` the defining series converge and are summed directly, with the
equivalent second series as a cross-check. For ``q > 1`` the defining
series diverge; the value is taken from the rewritten series in ``p = 1/q``,
which converges (S1 with rho >= 4, S2 with kappa >= 2), oscillates between
two accumulation points (S1 with rho = 3, resolved by pair-averaging), or
diverges outright (S2 with kappa = 1).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import Decimal
from typing import Iterable, Iterator

from ._summation import DEFAULT_MAX_TERMS, Direction, classify, sum_terms, threshold
from .errors import DomainError, GaussQError, NonBiconvergentTailError, NonDecayingTermsError
from .heine import s2_line2_terms
from .numerics import DEFAULT_PRECISION, GUARD_DIGITS, Number, check_precision, to_real, working_precision
from .qcore import QParam, _qpoch_inf, polygonal_exponent

CESARO_WINDOW = 10

__all__ = [
    "BranchMismatchError",
    "Direction",
    "Family",
    "SeriesSpec",
    "Status",
    "SumResult",
    "cesaro_pair_average",
    "gauss_problem2",
    "q_infinity",
    "s1_limit",
    "s1_line_terms",
    "s1_partial_sum",
    "s1_term",
    "s2_limit",
    "s2_line_terms",
    "s2_term",
    "sum_S1",
    "sum_S2",
]


class Status(str, enum.Enum):
    CONVERGED = "converged"
    CESARO = "cesaro"
    DIVERGENT = "divergent"


class Family(str, enum.Enum):
    S1 = "s1"
    S2 = "s2"


class BranchMismatchError(GaussQError, ArithmeticError):
    """The two equivalent q < 1 series disagreed beyond tolerance."""


@dataclass(frozen=True)
class SumResult:
    value: Decimal | None
    status: Status
    terms_used: int
    gap: Decimal | None = None
    direction: Direction | None = None
    error_estimate: Decimal | None = None

    def __post_init__(self):
        if self.status is Status.CONVERGED and (self.value is None or self.gap is not None):
            raise ValueError("converged result needs a value and no gap")
        if self.status is Status.CESARO and (self.value is None or self.gap is None or self.gap <= 0):
            raise ValueError("Cesaro result needs a value and a positive gap")
        if self.status is Status.DIVERGENT and (self.value is not None or self.direction is None):
            raise ValueError("divergent result carries a direction and no value")


@dataclass(frozen=True)
class SeriesSpec:
    family: Family
    param: int
    q: Number

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.family is Family.S1 and self.param < 3:
            raise DomainError(f"S1 needs rho >= 3, got {self.param}")
        if self.family is Family.S2 and self.param < 1:
            raise DomainError(f"S2 needs kappa >= 1, got {self.param}")

    def evaluate(self, prec: int = DEFAULT_PRECISION, max_terms: int = DEFAULT_MAX_TERMS) -> SumResult:
        fn = sum_S1 if self.family is Family.S1 else sum_S2
        return fn(self.param, self.q, prec, max_terms=max_terms)


# --- term generators (run in the caller's decimal context) -----------------


def s1_line_terms(rho: int, line: int, base: Decimal) -> Iterator[Decimal]:
    """Terms of line 1, 2 or 3 of the polygonal identity.

    Line 1 is ``(-1)^n q^{rho-gonal(n)}``. Lines 2 and 3 share the ratio form
    ``(-1)^n base^{L n} (1+b)(1+b^{1+m})... / ((1+b^{rho-1})(1+b^{rho-1+m})...)``
    with ``m = 2 rho - 4``; ``L = 1`` on line 2 (base q) and ``L = rho - 3``
    on line 3 (base p = 1/q).
    """
    if line == 1:
        t = Decimal(1)
        n = 0
        while True:
            yield t
            t *= -(base ** ((rho - 2) * n + 1))
            n += 1
    if line not in (2, 3):
        raise DomainError("line must be 1, 2 or 3")
    m = 2 * rho - 4
    step = base**m
    lead = -(base ** (1 if line == 2 else rho - 3))
    up = base
    down = base ** (rho - 1)
    t = Decimal(1)
    while True:
        yield t
        t *= lead * (1 + up) / (1 + down)
        up *= step
        down *= step


def s2_line_terms(kappa: int, line: int, base: Decimal) -> Iterator[Decimal]:
    """Terms of line 1 (``q^n (q;q^k)_n``), 2 (closed form) or 3 (``-p^{(k-1)n+1}/(p;p^k)_{n+1}``)."""
    if line == 1:
        t = Decimal(1)
        qk = base**kappa
        fac = base
        while True:
            yield t
            t *= base * (1 - fac)
            fac *= qk
        return
    if line == 2:
        yield from s2_line2_terms(kappa, base)
        return
    if line != 3:
        raise DomainError("line must be 1, 2 or 3")
    pk = base**kappa
    lead = base ** (kappa - 1)
    fac = base * pk  # p^{1 + k(n+1)}
    t = -base / (1 - base)
    while True:
        yield t
        t *= lead / (1 - fac)
        fac *= pk


def _nth(gen: Iterable[Decimal], n: int) -> Decimal:
    for i, t in enumerate(gen):
        if i == n:
            return t
    raise AssertionError("term generators are infinite")


def s1_term(rho: int, line: int, n: int, q_or_p: Number, prec: int = DEFAULT_PRECISION) -> Decimal:
    """The ``n``-th term of the chosen polygonal line; line 3 takes ``p``.

    >>> s1_term(3, 1, 2, "0.5")
    Decimal('0.125')
    """
    polygonal_exponent(rho, 0)
    if n < 0:
        raise DomainError("n must be non-negative")
    check_precision(prec)
    work = prec + GUARD_DIGITS
    base = to_real(q_or_p, work)
    with working_precision(work):
        t = _nth(s1_line_terms(rho, line, base), n)
    with working_precision(prec):
        return +t


def s2_term(kappa: int, line: int, n: int, q_or_p: Number, prec: int = DEFAULT_PRECISION) -> Decimal:
    if kappa < 1 or n < 0:
        raise DomainError("need kappa >= 1 and n >= 0")
    check_precision(prec)
    work = prec + GUARD_DIGITS
    base = to_real(q_or_p, work)
    with working_precision(work):
        t = _nth(s2_line_terms(kappa, line, base), n)
    with working_precision(prec):
        return +t


def s1_partial_sum(rho: int, line: int, q_or_p: Number, n: int, prec: int = DEFAULT_PRECISION) -> Decimal:
    """``S_N``: the sum of terms ``0..N`` of a polygonal line."""
    check_precision(prec)
    work = prec + GUARD_DIGITS
    base = to_real(q_or_p, work)
    with working_precision(work):
        total = Decimal(0)
        for i, t in enumerate(s1_line_terms(rho, line, base)):
            if i > n:
                break
            total += t
    with working_precision(prec):
        return +total


# --- summation procedures ---------------------------------------------------


def cesaro_pair_average(
    terms: Iterable[Decimal], prec: int = DEFAULT_PRECISION, max_terms: int = DEFAULT_MAX_TERMS
) -> tuple[Decimal, Decimal, int]:
    """Average the even- and odd-index accumulation points of the partial sums.

    Partial sums are accumulated until ``|S_N - S_{N+2}| < 10^-(P-10)`` holds
    for ten consecutive indices of each parity. Returns ``(lim, gap, N)``
    with ``lim = (S_N + S_{N+1})/2`` and ``gap = |S_N - S_{N+1}|`` for the
    last even ``N``; ``N`` is the number of terms consumed.
    """
    check_precision(prec)
    tol = Decimal(10) ** (-(prec - 10))
    need = 2 * CESARO_WINDOW
    with working_precision(prec + GUARD_DIGITS):
        sums: list[Decimal] = []
        total = Decimal(0)
        settled = 0
        for n, t in enumerate(terms):
            total += t
            sums.append(total)
            if n >= 2:
                settled = settled + 1 if abs(sums[n] - sums[n - 2]) < tol else 0
                if settled >= need and n % 2 == 1:
                    even, odd = sums[n - 1], sums[n]
                    lim = (even + odd) / 2
                    gap = abs(even - odd)
                    break
            if n + 1 >= max_terms:
                raise NonBiconvergentTailError(f"partial sums did not settle into two limits within {max_terms} terms")
        else:
            raise NonBiconvergentTailError("term generator ended before the partial sums settled")
    with working_precision(prec):
        return +lim, +gap, n + 1


def q_infinity(p: Number, prec: int = DEFAULT_PRECISION) -> Decimal:
    """``prod_{n>=1} (1 + p^{2n-1}) / (1 + p^{2n})`` for ``0 <= p < 1``."""
    check_precision(prec)
    work = prec + GUARD_DIGITS
    pd = to_real(p, work)
    if not 0 <= pd < 1:
        raise DomainError("Q_inf needs 0 <= p < 1")
    eps = threshold(prec)
    with working_precision(work):
        result = Decimal(1)
        odd = pd
        while odd >= eps:
            result *= (1 + odd) / (1 + odd * pd)
            odd *= pd * pd
    with working_precision(prec):
        return +result


def _two_line_check(v1: Decimal, v2: Decimal, prec: int, what: str) -> Decimal:
    err = abs(v1 - v2)
    if err > Decimal(10) ** (-(prec - 10)):
        raise BranchMismatchError(f"{what}: the two q < 1 series differ by {err:.3e}")
    return err


def _round(x: Decimal, prec: int) -> Decimal:
    with working_precision(prec):
        return +x


def sum_S1(
    rho: int,
    q: Number,
    prec: int = DEFAULT_PRECISION,
    max_terms: int = DEFAULT_MAX_TERMS,
    line: int | None = None,
) -> SumResult:
    """Value of ``S1_rho(q) = sum (-1)^n q^{n[(rho-2)n-(rho-4)]/2}``.

    ``line`` forces one representation (1 or 2 need ``q < 1``; 3 is summed in
    ``p = 1/q``), otherwise the branch follows ``q``.
    """
    polygonal_exponent(rho, 0)
    qp = QParam.from_value(q, prec)
    work = prec + GUARD_DIGITS
    qd = to_real(q, work)
    with working_precision(work):
        pd = 1 / qd
        if line is None:
            line = 1 if qd < 1 else 3
        if line in (1, 2) and qd > 1:
            raise DomainError("lines 1 and 2 diverge for q > 1")
        if line == 3 and pd >= 1:
            raise DomainError("line 3 needs p = 1/q < 1")

        if line == 3 and rho == 3:
            lim, gap, n = cesaro_pair_average(s1_line_terms(3, 3, pd), prec, max_terms)
            return SumResult(lim, Status.CESARO, n, gap=gap, error_estimate=threshold(prec - 20))

        if line == 3:
            total, n, tail = sum_terms(s1_line_terms(rho, 3, pd), prec, max_terms)
            return SumResult(_round(total, prec), Status.CONVERGED, n, error_estimate=_round(tail, prec))

        total, n, tail = sum_terms(s1_line_terms(rho, line, qd), prec, max_terms)
        err = tail
        if not qp.above_one:
            other = 2 if line == 1 else 1
            v2, n2, _ = sum_terms(s1_line_terms(rho, other, qd), prec, max_terms)
            err = max(tail, _two_line_check(total, v2, prec, f"S1 rho={rho} q={q}"))
            n = max(n, n2)
    return SumResult(_round(total, prec), Status.CONVERGED, n, error_estimate=_round(err, prec))


def sum_S2(
    kappa: int,
    q: Number,
    prec: int = DEFAULT_PRECISION,
    max_terms: int = DEFAULT_MAX_TERMS,
    line: int | None = None,
) -> SumResult:
    """Value of ``S2_kappa(q) = sum q^n (q; q^kappa)_n``.

    For ``q > 1`` the value is minus the sum of the ``p = 1/q`` series; when
    that series' terms do not decay (kappa = 1) the result is Divergent.
    """
    if kappa < 1:
        raise DomainError(f"kappa must be >= 1, got {kappa}")
    QParam.from_value(q, prec)
    work = prec + GUARD_DIGITS
    qd = to_real(q, work)
    with working_precision(work):
        pd = 1 / qd
        if line is None:
            line = 1 if qd < 1 else 3
        if line in (1, 2) and qd > 1:
            raise DomainError("lines 1 and 2 diverge for q > 1")
        if line == 3 and pd >= 1:
            raise DomainError("line 3 needs p = 1/q < 1")

        if line == 3:
            try:
                total, n, tail = sum_terms(s2_line_terms(kappa, 3, pd), prec, max_terms)
            except NonDecayingTermsError as exc:
                return SumResult(None, Status.DIVERGENT, exc.terms_used, direction=Direction(exc.direction))
            return SumResult(_round(total, prec), Status.CONVERGED, n, error_estimate=_round(tail, prec))

        total, n, tail = sum_terms(s2_line_terms(kappa, line, qd), prec, max_terms)
        other = 2 if line == 1 else 1
        v2, n2, _ = sum_terms(s2_line_terms(kappa, other, qd), prec, max_terms)
        err = max(tail, _two_line_check(total, v2, prec, f"S2 kappa={kappa} q={q}"))
    return SumResult(_round(total, prec), Status.CONVERGED, max(n, n2), error_estimate=_round(err, prec))


def gauss_problem2(q: Number, n_terms: int = 200, prec: int = DEFAULT_PRECISION) -> SumResult:
    """Verdict on ``sum (q; q)_n``.

    For ``0 < q < 1`` the terms tend to ``(q;q)_inf != 0`` and for ``q > 1``
    they grow without bound, so the series diverges either way; ``q = 1``
    leaves only the leading 1.
    """
    check_precision(prec)
    work = prec + GUARD_DIGITS
    qd = to_real(q, work)
    if qd <= 0:
        raise DomainError("q must be positive")
    if qd == 1:
        return SumResult(Decimal(1), Status.CONVERGED, 1, error_estimate=Decimal(0))
    with working_precision(work):
        terms = []
        t = Decimal(1)
        qn = qd
        for _ in range(n_terms + 1):
            terms.append(t)
            t *= 1 - qn
            qn *= qd
        if qd < 1:
            limit = _qpoch_inf(qd, qd, prec)
            if abs(limit) <= threshold(prec):
                raise AssertionError("(q;q)_inf vanished for 0 < q < 1")
            direction = Direction.PLUS_INF
        else:
            direction = classify(terms[-20:])
    return SumResult(None, Status.DIVERGENT, n_terms + 1, direction=direction)


def s1_limit(q: Number) -> Decimal:
    """Large-rho limit: ``1 - q`` for ``q < 1`` and ``1`` for ``q > 1``."""
    qd = QParam.from_value(q).q
    with working_precision(DEFAULT_PRECISION):
        return 1 - qd if qd < 1 else Decimal(1)


def s2_limit(q: Number) -> Decimal:
    """Large-kappa limit: ``1 + q`` for ``q < 1`` and ``1/(1 - q)`` for ``q > 1``."""
    qd = QParam.from_value(q).q
    with working_precision(DEFAULT_PRECISION):
        return 1 + qd if qd < 1 else 1 / (1 - qd)

