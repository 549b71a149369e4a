"""Continued fractions: evaluation, series <-> fraction conversion, coefficient families.

Two layouts are used throughout:

* Plus form   ``d0/(1 + d1/(1 + d2/(1 + ...)))``
* Minus form  ``e0/(1 - e1 x/(1 - e2 x/(1 - ...)))`` with partial numerators
  linear in ``x``.

Coefficient generators accept Fractions (exact output) or Decimals.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import DegenerateHankelError, DimensionError, DomainError, IndeterminateConvergentError
from .numerics import DEFAULT_PRECISION, GUARD_DIGITS, check_precision, exact_det, to_real, working_precision
from .qcore import qpoch_rat

MAX_MUIR_ORDER = 16
_RESCALE_HI = 100
_RESCALE_LO = -100


class Sign(enum.Enum):
    PLUS = 1
    MINUS = -1


@dataclass(frozen=True)
class CFrac:
    sign: Sign
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs or self.coeffs[0] == 0:
            raise DomainError("continued fraction needs a non-zero d0")

    @classmethod
    def plus(cls, coeffs) -> "CFrac":
        return cls(Sign.PLUS, coeffs)

    @classmethod
    def minus(cls, coeffs) -> "CFrac":
        return cls(Sign.MINUS, coeffs)

    def to_plus(self) -> "CFrac":
        """Same fraction in Plus form (``d_n -> -d_n`` for n >= 1 when Minus)."""
        if self.sign is Sign.PLUS:
            return self
        return CFrac.plus((self.coeffs[0],) + tuple(-d for d in self.coeffs[1:]))

    @property
    def exact(self) -> bool:
        return all(isinstance(d, (int, Fraction)) for d in self.coeffs)


@dataclass(frozen=True)
class CFracValue:
    even: object
    odd: object
    converged: bool
    depth: int


def convergents(cf: CFrac, depth: int | None = None) -> Iterator[tuple[object, object]]:
    """Yield ``(A_k, B_k)`` for k = 0, 1, ... with ``C_k = A_k / B_k``.

    Exact (no rescaling) when all coefficients are rational; otherwise the
    caller's decimal context applies and the pair is rescaled by a power of
    ten whenever ``|B_k|`` leaves ``[1e-100, 1e100]``.
    """
    s = cf.sign.value
    coeffs = cf.coeffs if depth is None else cf.coeffs[: depth + 1]
    exact = cf.exact
    zero, one = (Fraction(0), Fraction(1)) if exact else (Decimal(0), Decimal(1))
    a_prev, a = one, zero
    b_prev, b = zero, one
    for k, d in enumerate(coeffs):
        num = d if k == 0 else s * d
        a, a_prev = a + num * a_prev, a
        b, b_prev = b + num * b_prev, b
        if not exact and not b.is_zero():
            e = b.adjusted()
            if e > _RESCALE_HI or e < _RESCALE_LO:
                a, a_prev, b, b_prev = (v.scaleb(-e) for v in (a, a_prev, b, b_prev))
        yield a, b


def eval_cfrac(cf: CFrac, depth: int, prec: int = DEFAULT_PRECISION) -> CFracValue:
    """Even and odd convergents at the deepest levels ``<= depth``.

    A fraction with fewer than ``depth + 1`` coefficients terminates, so both
    reported values equal its exact value. ``converged`` compares the two at
    ``10^-(P-10)`` relative to ``max(1, |C_even|)``.
    """
    if depth < 2:
        raise DomainError("depth must be >= 2")
    check_precision(prec)
    last = min(depth, len(cf.coeffs) - 1)
    if not cf.exact:
        cf = CFrac(cf.sign, tuple(to_real(d, prec + GUARD_DIGITS) for d in cf.coeffs))
    with working_precision(prec + GUARD_DIGITS):
        pairs = list(convergents(cf, last))

        def value(k):
            a, b = pairs[k]
            if b == 0:
                raise IndeterminateConvergentError(k)
            return a / b

        if last < depth:
            even = odd = value(last)
        else:
            even, odd = (value(last), value(last - 1)) if last % 2 == 0 else (value(last - 1), value(last))
    if not cf.exact:
        with working_precision(prec):
            even, odd = +even, +odd
    tol = Fraction(10) ** (-(prec - 10)) * max(1, abs(Fraction(even)))
    converged = abs(Fraction(even) - Fraction(odd)) < tol
    return CFracValue(even, odd, converged, last)


def hankel_minors(c: Sequence[Fraction], count: int) -> list[Fraction]:
    """``alpha_0 .. alpha_{count-1}``: c0, c1, then alternating Hankel determinants."""
    alphas = []
    for k in range(count):
        if k < 2:
            alphas.append(Fraction(c[k]))
            continue
        m, shift = divmod(k, 2)
        alphas.append(exact_det([[c[i + j + shift] for j in range(m + 1)] for i in range(m + 1)]))
    return alphas


def muir_rogers(c: Sequence[Fraction | int], order: int) -> list[Fraction]:
    """Minus-form coefficients ``e_0 .. e_M`` of the power series ``sum c_n x^n``.

    Needs ``c_0 .. c_M``. Raises DegenerateHankelError (carrying the
    coefficients formed so far) if a minor used as a divisor vanishes.
    """
    if order < 0 or order > MAX_MUIR_ORDER:
        raise DomainError(f"order must lie in [0, {MAX_MUIR_ORDER}]")
    if len(c) < order + 1:
        raise DimensionError(f"need {order + 1} series coefficients, got {len(c)}")
    c = [Fraction(v) for v in c]
    if c[0] == 0:
        raise DegenerateHankelError(0)
    alpha = hankel_minors(c, order + 1)
    e: list[Fraction] = []
    for n in range(order + 1):
        if n == 0:
            num, den_idx = alpha[0], []
        elif n == 1:
            num, den_idx = alpha[1], [0]
        elif n == 2:
            num, den_idx = alpha[2], [1, 0]
        else:
            num, den_idx = alpha[n] * alpha[n - 3], [n - 1, n - 2]
        for i in den_idx:
            if alpha[i] == 0:
                raise DegenerateHankelError(i, e)
        den = 1
        for i in den_idx:
            den *= alpha[i]
        e.append(num / den)
    return e


def closed_form_e(kappa: int, q: Fraction | int, n: int) -> Fraction:
    """Closed-form Minus-form coefficient ``e_n`` of ``sum (q; q^kappa)_n x^n``."""
    if kappa < 1 or n < 0:
        raise DomainError("need kappa >= 1 and n >= 0")
    q = Fraction(q)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return 1 - q
    m, odd = divmod(n, 2)
    if odd:
        return q ** (kappa * m) * (1 - q ** (kappa * m + 1))
    return q ** (kappa * m + 1 - kappa) * (1 - q ** (kappa * m))


def ramanujan_cf_coeffs(a, lam, b, q, n: int) -> list:
    """Plus-form ``d_0 .. d_N`` of Ramanujan's fraction for ``G(aq, lam q; b, q)/G(a, lam; b, q)``."""
    if n < 1:
        raise DomainError("N must be >= 1")
    d = [a * 0 + 1]
    for k in range(1, n + 1):
        m, odd = divmod(k, 2)
        if odd:
            d.append(a * q ** (m + 1) + lam * q ** (2 * m + 1))
        else:
            d.append(b * q**m + lam * q ** (2 * m))
    return d


def second_gauss_params(kappa: int, q: Fraction) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """``(a, lam, b, q^kappa)`` turning Ramanujan's fraction into the S2 family's fraction."""
    q = Fraction(q)
    return -(q ** (1 - kappa)), q ** (2 - kappa), -(q ** (2 - kappa)), q**kappa


def gauss4_coeffs(kappa: int, q: Fraction | int, n: int) -> list[Fraction]:
    """Plus-form ``d_0 .. d_N`` for ``sum q^n (q; q^kappa)_n`` (the ``x = q`` fraction)."""
    if n < 1:
        raise DomainError("N must be >= 1")
    q = Fraction(q)
    d = [Fraction(1)]
    for k in range(1, n + 1):
        m, odd = divmod(k, 2)
        if odd:
            d.append(q ** (2 * kappa * m + 2) - q ** (kappa * m + 1))
        else:
            d.append(q ** (2 * kappa * m + 2 - kappa) - q ** (kappa * m + 2 - kappa))
    return d


def gauss_entry7_coeffs(which: int, q, n: int) -> list:
    """Plus-form coefficients of the two Entry-7 fractions.

    ``which=1``: ``1/(1+ q/(1+ (q^2-q)/(1+ q^3/(1+ (q^4-q^2)/...``
    ``which=2``: ``1/(1+ (q-1)/(1+ (q^2-q)/(1+ (q^3-q)/(1+ (q^4-q^2)/...``
    """
    if which not in (1, 2):
        raise DomainError("which must be 1 or 2")
    if n < 1:
        raise DomainError("N must be >= 1")
    one = q * 0 + 1
    d = [one]
    for j in range(1, n + 1):
        k, odd = divmod(j, 2)
        if not odd:
            d.append(q**j - q**k)
        elif which == 1:
            d.append(q**j)
        elif j == 1:
            d.append(q - 1)
        else:
            d.append(q**j - q**k)
    return d


def _poly_add(p: list[Fraction], r: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(p), len(r))
    for i, v in enumerate(p):
        out[i] += v
    for i, v in enumerate(r):
        out[i] += v
    return out


def cfrac_to_series(e: Sequence[Fraction | int], depth: int, order: int) -> list[Fraction]:
    """Expand the Minus-form convergent on ``e_0 .. e_{K-1}`` to a power series.

    Numerator and denominator are built as exact polynomials in ``x`` and
    divided as power series; returns ``c_0 .. c_N``. The convergent matches
    the full fraction through ``x^{K-1}``, hence the requirement ``K >= N+1``
    unless ``e`` has at most K entries (the fraction terminates and the
    expansion is exact to any order).
    """
    if depth < order + 1 and len(e) > depth:
        raise DomainError("need depth K >= N + 1 for a truncated fraction")
    e = [Fraction(v) for v in e[:depth]]
    if not e:
        raise DomainError("need at least e_0")
    # P_k, Q_k as coefficient lists; partial numerator k >= 1 is -e_k x
    p_prev, p = [Fraction(1)], [Fraction(0)]
    q_prev, q = [Fraction(0)], [Fraction(1)]
    for k, ek in enumerate(e):
        shift = [Fraction(ek)] if k == 0 else [Fraction(0), -ek]
        p, p_prev = _poly_add(p, _poly_mul(shift, p_prev)), p
        q, q_prev = _poly_add(q, _poly_mul(shift, q_prev)), q
    if q[0] == 0:
        raise DegenerateHankelError(0)
    num = p + [Fraction(0)] * (order + 1)
    out: list[Fraction] = []
    for n in range(order + 1):
        acc = num[n] - sum(out[j] * q[n - j] for j in range(max(0, n - len(q) + 1), n))
        out.append(acc / q[0])
    return out


def _poly_mul(p: list[Fraction], r: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(r):
                out[i + j] += a * b
    return out


def qpoch_series(q: Fraction, kappa: int, order: int) -> list[Fraction]:
    """``c_n = (q; q^kappa)_n`` for ``n = 0..order``."""
    return [qpoch_rat(q, Fraction(q) ** kappa, n) for n in range(order + 1)]


def triangular_series(q: Fraction, order: int) -> list[Fraction]:
    """``c_n = q^{n(n+1)/2}`` for ``n = 0..order``."""
    q = Fraction(q)
    return [q ** (n * (n + 1) // 2) for n in range(order + 1)]
