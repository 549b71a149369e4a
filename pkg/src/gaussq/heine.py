"""Basic hypergeometric 2phi1, Heine's five relations, Rogers-Fine, Ramanujan's G.

All evaluations run at ``prec + GUARD_DIGITS`` and round the result to
``prec``. Series stop after five consecutive terms below ``10^-(P+10)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from typing import Callable, Iterator

from ._summation import sum_terms
from .errors import DomainError, InapplicableTransformError, PoleError
from .numerics import DEFAULT_PRECISION, GUARD_DIGITS, Number, check_precision, to_real, working_precision
from .qcore import _qpoch_inf


@dataclass(frozen=True)
class Phi21Params:
    alpha: Number
    beta: Number
    gamma: Number
    q: Number
    tau: Number

    def at(self, prec: int) -> "Phi21Params":
        return Phi21Params(*(to_real(v, prec) for v in (self.alpha, self.beta, self.gamma, self.q, self.tau)))


@dataclass(frozen=True)
class GParams:
    a: Number
    lam: Number
    b: Number
    q: Number

    def at(self, prec: int) -> "GParams":
        return GParams(*(to_real(v, prec) for v in (self.a, self.lam, self.b, self.q)))


def _pole_guard(factor: Decimal, prec: int, what: str) -> None:
    if abs(factor) <= Decimal(10) ** (-prec):
        raise PoleError(f"vanishing denominator factor in {what}")


def _evaluate(gen: Callable[[int], Iterator[Decimal]], prec: int, max_terms: int | None = None) -> Decimal:
    check_precision(prec)
    work = prec + GUARD_DIGITS
    with working_precision(work):
        kwargs = {} if max_terms is None else {"max_terms": max_terms}
        total, _, _ = sum_terms(gen(work), prec, **kwargs)
    with working_precision(prec):
        return +total


def phi21(params: Phi21Params, prec: int = DEFAULT_PRECISION) -> Decimal:
    """``sum (alpha;q)_n (beta;q)_n / ((gamma;q)_n (q;q)_n) tau^n`` for ``|q|, |tau| < 1``."""

    def terms(work: int) -> Iterator[Decimal]:
        p = params.at(work)
        if abs(p.q) >= 1 or abs(p.tau) >= 1:
            raise DomainError("2phi1 needs |q| < 1 and |tau| < 1")
        t = Decimal(1)
        qn = Decimal(1)
        while True:
            yield t
            den = (1 - p.gamma * qn) * (1 - qn * p.q)
            _pole_guard(1 - p.gamma * qn, work - 5, "2phi1 (gamma; q)_n")
            t = t * (1 - p.alpha * qn) * (1 - p.beta * qn) / den * p.tau
            qn *= p.q

    return _evaluate(terms, prec)


def _heine_parts(k: int, a: Decimal, b: Decimal, c: Decimal, t: Decimal):
    """(numerator args, denominator args, new (alpha, beta, gamma, tau)) for relation k."""
    if k == 1:
        return (b, a * t), (c, t), (c / b, t, a * t, b)
    if k == 2:
        return (c / b, b * t), (c, t), (a * b * t / c, b, b * t, c / b)
    if k == 3:
        return (a * b * t / c,), (t,), (c / a, c / b, c, a * b * t / c)
    if k == 4:
        return (a, b * t), (c, t), (c / a, t, b * t, a)
    if k == 5:
        return (c / a, a * t), (c, t), (a * b * t / c, a, a * t, c / a)
    raise DomainError(f"Heine relation index must be 1..5, got {k}")


def heine_transform(k: int, params: Phi21Params, prec: int = DEFAULT_PRECISION) -> tuple[Decimal, Phi21Params]:
    """Apply Heine relation ``k``: ``phi21(params) == prefactor * phi21(new)``.

    Relations 1-3 are the classical ones; 4 and 5 are 1 and 2 after swapping
    ``alpha`` and ``beta``. Raises InapplicableTransformError when the new
    argument does not have modulus below one.
    """
    check_precision(prec)
    work = prec + GUARD_DIGITS
    p = params.at(work)
    with working_precision(work):
        if p.beta.is_zero() and k in (1, 2) or p.alpha.is_zero() and k in (3, 4, 5) or p.gamma.is_zero() and k in (2, 3, 5):
            raise InapplicableTransformError(f"relation {k} divides by a zero parameter")
        num, den, new = _heine_parts(k, p.alpha, p.beta, p.gamma, p.tau)
        if abs(new[3]) >= 1:
            raise InapplicableTransformError(f"relation {k}: transformed argument {new[3]:.6g} has modulus >= 1")
        top = Decimal(1)
        for v in num:
            top *= _qpoch_inf(v, p.q, work)
        bottom = Decimal(1)
        for v in den:
            bottom *= _qpoch_inf(v, p.q, work)
        _pole_guard(bottom, work - 5, f"Heine relation {k} prefactor")
        pref = top / bottom
    with working_precision(prec):
        pref = +pref
    return pref, Phi21Params(new[0], new[1], new[2], p.q, new[3])


def rogers_fine_lhs(x: Number, q: Number, prec: int = DEFAULT_PRECISION, a: int = 1, b: int = 0) -> Decimal:
    """``sum x^n q^{a n(n+1)/2 - b n}``."""

    def terms(work: int) -> Iterator[Decimal]:
        xd, qd = to_real(x, work), to_real(q, work)
        if abs(qd) >= 1:
            raise DomainError("needs |q| < 1")
        t = Decimal(1)
        n = 0
        while True:
            yield t
            n += 1
            t *= xd * qd ** (a * n - b)

    return _evaluate(terms, prec)


def rogers_fine_general(a: int, b: int, x: Number, q: Number, prec: int = DEFAULT_PRECISION) -> Decimal:
    """``sum x^n q^{(a-b)n} (x q^{a-b}; q^{2a})_n / (x q^{2a-b}; q^{2a})_n``.

    Equal to :func:`rogers_fine_lhs` with the same ``a, b``. ``a=1, b=0`` is
    the base identity; ``a=rho-2, b=rho-3, x=-1`` is the polygonal series.
    """
    if a < 1 or b < 0:
        raise DomainError("need integer a >= 1 and b >= 0")

    def terms(work: int) -> Iterator[Decimal]:
        xd, qd = to_real(x, work), to_real(q, work)
        if abs(qd) >= 1:
            raise DomainError("needs |q| < 1")
        step = qd ** (2 * a)
        lead = xd * qd ** (a - b)
        num = xd * qd ** (a - b)
        den = xd * qd ** (2 * a - b)
        t = Decimal(1)
        while True:
            yield t
            _pole_guard(1 - den, work - 5, "Rogers-Fine denominator")
            t *= lead * (1 - num) / (1 - den)
            num *= step
            den *= step

    return _evaluate(terms, prec)


def rogers_fine_rhs(x: Number, q: Number, prec: int = DEFAULT_PRECISION) -> Decimal:
    """``sum (xq; q^2)_n / (xq^2; q^2)_n (xq)^n``."""
    return rogers_fine_general(1, 0, x, q, prec)


def _g_terms(gp: GParams, extra: int):
    def terms(work: int) -> Iterator[Decimal]:
        g = gp.at(work)
        if abs(g.q) >= 1:
            raise DomainError("G series needs |q| < 1")
        t = Decimal(1)
        n = 0
        qn = Decimal(1)
        while True:
            yield t
            # t_{n+1}/t_n = q^{n+1+extra} (a + lam q^n) / ((1 - q^{n+1}) (1 + b q^{n+1}))
            lam_qn = g.lam * qn
            qn *= g.q
            den = 1 + g.b * qn
            _pole_guard(den, work - 5, "G series (1 + b q^n)")
            t *= qn * g.q**extra * (g.a + lam_qn) / ((1 - qn) * den)
            n += 1

    return terms


def g0(gp: GParams, prec: int = DEFAULT_PRECISION) -> Decimal:
    """Ramanujan's ``G(a, lam; b, q) = 1 + sum q^{n(n+1)/2}/(q;q)_n (a+lam)...(a+lam q^{n-1}) / ((1+bq)...(1+bq^n))``."""
    return _evaluate(_g_terms(gp, 0), prec)


def g1(gp: GParams, prec: int = DEFAULT_PRECISION) -> Decimal:
    """``G(aq, lam q; b, q)``: same as :func:`g0` with ``q^{n(n+3)/2}``."""
    return _evaluate(_g_terms(gp, 1), prec)


def g_as_phi21(gp: GParams, tau: Number, shifted: bool = False) -> Phi21Params:
    """The 2phi1 whose ``tau -> 0`` limit is G0 (or G1 when ``shifted``)."""
    g = gp.at(DEFAULT_PRECISION + GUARD_DIGITS)
    t = to_real(tau, DEFAULT_PRECISION + GUARD_DIGITS)
    with working_precision(DEFAULT_PRECISION + GUARD_DIGITS):
        if g.a.is_zero():
            raise DomainError("the 2phi1 limit form needs a != 0")
        qa = g.q**2 if shifted else g.q
        return Phi21Params(-g.a * qa / t, -g.lam / g.a, -g.b * g.q, g.q, t)


def kappa_g_params(kappa: int, q: Number, prec: int = DEFAULT_PRECISION) -> GParams:
    """G parameters ``a=-q^{1-k}, lam=q^{2-k}, b=-q^{2-k}`` on base ``q^k``."""
    if kappa < 1:
        raise DomainError("kappa must be >= 1")
    qd = to_real(q, prec + GUARD_DIGITS)
    with working_precision(prec + GUARD_DIGITS):
        return GParams(-(qd ** (1 - kappa)), qd ** (2 - kappa), -(qd ** (2 - kappa)), qd**kappa)


def s2_line2_terms(kappa: int, q: Decimal) -> Iterator[Decimal]:
    """Terms of ``sum (-1)^n q^{n(kn+4-k)/2} / (q; q^k)_{n+1}`` in the current context."""
    t = 1 / (1 - q)
    qk = q**kappa
    fac = q * qk  # q^{1 + k(n+1)}
    n = 0
    while True:
        yield t
        # exponent step e(n+1) - e(n) = k n + 2
        t *= -(q ** (kappa * n + 2)) / (1 - fac)
        fac *= qk
        n += 1


def s2_closed_form(kappa: int, q: Number, prec: int = DEFAULT_PRECISION, max_terms: int | None = None) -> Decimal:
    """``sum (-1)^n q^{n(kn+4-k)/2} / (q; q^k)_{n+1}`` for ``0 < q < 1``."""
    if kappa < 1:
        raise DomainError("kappa must be >= 1")

    def terms(work: int) -> Iterator[Decimal]:
        qd = to_real(q, work)
        if not 0 < qd < 1:
            raise DomainError("closed form needs 0 < q < 1; use the p = 1/q branch for q > 1")
        return s2_line2_terms(kappa, qd)

    return _evaluate(terms, prec, max_terms)


__all__ = [
    "GParams",
    "Phi21Params",
    "g0",
    "g1",
    "g_as_phi21",
    "heine_transform",
    "kappa_g_params",
    "phi21",
    "rogers_fine_general",
    "rogers_fine_lhs",
    "rogers_fine_rhs",
    "s2_closed_form",
    "s2_line2_terms",
]
