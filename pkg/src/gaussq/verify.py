"""Identity batteries: each suite returns a list of named checks with the worst deviation seen."""

from __future__ import annotations

import random
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Callable

from . import cfrac, heine, series
from .numerics import DEFAULT_PRECISION, to_real, working_precision

SUITES = ("heine", "rogersfine", "muir", "ramanujan", "duality", "cesaro", "limits")

# published ten-digit values for the rho=3, p=1/2 pair-averaging experiment
CESARO_TOL = Fraction(1, 10**9)
QUOTED_PARTIAL_SUMS = {100: Fraction("1.0759457568"), 101: Fraction("-0.2208954963")}
QUOTED_LIM = Fraction("0.4275251302")
QUOTED_QINF = Fraction("1.296841253")


@dataclass
class Check:
    name: str
    passed: bool
    max_dev: Fraction | None = None
    detail: str = ""


def _dev(a, b) -> Fraction:
    return abs(Fraction(a) - Fraction(b))


def _numeric(name: str, pairs, tol: Fraction) -> Check:
    worst = max((_dev(a, b) for a, b in pairs), default=Fraction(0))
    return Check(name, worst <= tol, worst)


def default_tol(prec: int) -> Fraction:
    return Fraction(1, 10 ** (prec - 10))


def random_heine_params(rng: random.Random) -> heine.Phi21Params:
    """A 2phi1 parameter tuple for which all five Heine relations apply."""

    def signed(lo, hi):
        return Fraction(rng.uniform(lo, hi)).limit_denominator(10**6) * rng.choice((1, -1))

    alpha = signed(0.4, 0.9)
    beta = signed(0.4, 0.9)
    gamma = signed(0.1, 0.9) * min(abs(alpha), abs(beta))
    tau_cap = min(Fraction(9, 10), Fraction(9, 10) * abs(gamma) / (abs(alpha) * abs(beta)))
    tau = signed(0.05, 1.0) * tau_cap
    q = Fraction(rng.uniform(0.1, 0.7)).limit_denominator(10**6)
    return heine.Phi21Params(alpha, beta, gamma, q, tau)


def heine_checks(prec: int = DEFAULT_PRECISION, tol: Fraction | None = None, count: int = 25, seed: int = 7) -> list[Check]:
    tol = default_tol(prec) if tol is None else tol
    rng = random.Random(seed)
    tuples = [random_heine_params(rng) for _ in range(count)]
    checks = []
    direct = [heine.phi21(p, prec) for p in tuples]
    for k in range(1, 6):
        pairs = []
        for p, v in zip(tuples, direct):
            pref, new = heine.heine_transform(k, p, prec)
            pairs.append((v, Fraction(pref) * Fraction(heine.phi21(new, prec))))
        checks.append(_numeric(f"heine relation {k} vs direct 2phi1 ({count} tuples)", pairs, tol))

    # relation 1, then swap alpha/beta and apply 1 again, gives relation 2; once more gives 3
    worst = Fraction(0)
    for p in tuples:
        pref, cur = heine.heine_transform(1, p, prec)
        pref = Fraction(pref)
        for target in (2, 3):
            swapped = heine.Phi21Params(cur.beta, cur.alpha, cur.gamma, cur.q, cur.tau)
            f, cur = heine.heine_transform(1, swapped, prec)
            pref *= Fraction(f)
            ref_pref, ref = heine.heine_transform(target, p, prec)
            got = (pref, cur.alpha, cur.beta, cur.gamma, cur.tau)
            want = (ref_pref, ref.alpha, ref.beta, ref.gamma, ref.tau)
            worst = max(worst, *(_dev(a, b) for a, b in zip(got, want)))
    checks.append(Check("relation 1 composed with swaps reproduces relations 2 and 3", worst <= tol, worst))
    return checks


def rogersfine_checks(prec: int = DEFAULT_PRECISION, tol: Fraction | None = None) -> list[Check]:
    tol = default_tol(prec) if tol is None else tol
    qs = ("0.2", "0.5", "0.8")
    xs = ("-1", "0.3")
    base = [(heine.rogers_fine_lhs(x, q, prec), heine.rogers_fine_rhs(x, q, prec)) for q in qs for x in xs]
    general = [
        (heine.rogers_fine_lhs(x, q, prec, a, b), heine.rogers_fine_general(a, b, x, q, prec))
        for q in qs
        for x in xs
        for a, b in ((2, 1), (3, 2), (4, 3), (2, 0))
    ]
    s1 = [
        (series.sum_S1(rho, q, prec, line=1).value, heine.rogers_fine_general(rho - 2, rho - 3, -1, q, prec))
        for q in qs
        for rho in (3, 4, 5)
    ]
    return [
        _numeric("Rogers-Fine identity, both sides", base, tol),
        _numeric("Rogers-Fine with q->q^a, x->x q^-b, both sides", general, tol),
        _numeric("a=rho-2, b=rho-3, x=-1 gives the polygonal series", s1, tol),
    ]


def muir_checks(prec: int = DEFAULT_PRECISION, tol: Fraction | None = None, order: int = 9) -> list[Check]:
    qs = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 5))
    closed = True
    trip = True
    for q in qs:
        for kappa in (1, 2, 3):
            c = cfrac.qpoch_series(q, kappa, order)
            e = cfrac.muir_rogers(c, order)
            closed &= e == [cfrac.closed_form_e(kappa, q, n) for n in range(order + 1)]
            n_back = order // 2 * 2
            trip &= cfrac.cfrac_to_series(e, order + 1, n_back) == c[: n_back + 1]
    tri = all(
        cfrac.muir_rogers(cfrac.triangular_series(q, order), order) == cfrac.gauss_entry7_coeffs(1, q, order) for q in qs
    )
    entry2 = all(
        [e if n == 0 else -e for n, e in enumerate(cfrac.muir_rogers(cfrac.qpoch_series(q, 1, order), order))]
        == cfrac.gauss_entry7_coeffs(2, q, order)
        for q in qs
    )
    exact = Fraction(0)
    return [
        Check("Hankel-determinant e_n equal the closed form (exact)", closed, exact if closed else None),
        Check("series -> fraction -> series round trip (exact)", trip, exact if trip else None),
        Check("triangular series reproduces the first Entry-7 fraction (exact)", tri, exact if tri else None),
        Check("(q;q)_n series at x=1 reproduces the second Entry-7 fraction (exact)", entry2, exact if entry2 else None),
    ]


def ramanujan_checks(prec: int = DEFAULT_PRECISION, tol: Fraction | None = None) -> list[Check]:
    tol = default_tol(prec) if tol is None else tol
    qs = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 5))
    subst = all(
        cfrac.ramanujan_cf_coeffs(*cfrac.second_gauss_params(kappa, q)[:3], cfrac.second_gauss_params(kappa, q)[3], 21)
        == cfrac.gauss4_coeffs(kappa, q, 21)
        for q in qs
        for kappa in (1, 2, 3)
    )
    rr = all(cfrac.ramanujan_cf_coeffs(0, 1, 0, q, 20) == [q**n for n in range(21)] for q in qs)

    rr_pairs = []
    for q in ("0.1", "0.3"):
        cf = cfrac.CFrac.plus(cfrac.ramanujan_cf_coeffs(Decimal(0), Decimal(1), Decimal(0), to_real(q, prec + 10), 200))
        rr_pairs.append((cfrac.eval_cfrac(cf, 200, prec).even, rogers_ramanujan_ratio(q, prec)))

    grid = [Fraction(k, 20) * Fraction(19, 20) for k in range(1, 21)]
    g0_pairs = [(heine.g0(heine.GParams(-1, q, -q, q), prec), 1 - q) for q in grid]

    ratio_pairs = []
    for q in ("0.3", "0.5"):
        for kappa in (1, 2, 3):
            gp = heine.kappa_g_params(kappa, q, prec)
            ratio_pairs.append((Fraction(heine.g1(gp, prec)) / Fraction(heine.g0(gp, prec)), series.sum_S2(kappa, q, prec).value))
    return [
        Check("substituted Ramanujan coefficients equal the S2 fraction (exact, m <= 10)", subst, Fraction(0) if subst else None),
        Check("a=b=0, lam=1 gives d_n = q^n (exact)", rr, Fraction(0) if rr else None),
        _numeric("Rogers-Ramanujan fraction equals the series ratio", rr_pairs, tol),
        _numeric("G(-1, q; -q, q) = 1 - q on a 20-point grid", g0_pairs, tol),
        _numeric("G1/G0 with kappa parameters equals S2", ratio_pairs, tol),
    ]


def rogers_ramanujan_ratio(q, prec: int = DEFAULT_PRECISION) -> Decimal:
    """``sum q^{n(n+1)}/(q;q)_n / sum q^{n^2}/(q;q)_n``, both summed term by term."""
    work = prec + 10
    qd = to_real(q, work)
    eps = Decimal(10) ** (-(prec + 10))
    with working_precision(work):
        num = den = Decimal(0)
        poch = Decimal(1)
        n = 0
        while True:
            t = qd ** (n * n) / poch
            num += t * qd**n
            den += t
            if t < eps:
                break
            n += 1
            poch *= 1 - qd**n
        ratio = num / den
    with working_precision(prec):
        return +ratio


def duality_checks(prec: int = DEFAULT_PRECISION, tol: Fraction | None = None) -> list[Check]:
    tol = default_tol(prec) if tol is None else tol
    pairs = [(series.sum_S1(4, q, prec).value, series.sum_S1(4, 1 / Fraction(q), prec).value) for q in ("0.3", "0.5", "0.7")]
    terms = [
        (series.s1_term(4, 2, n, q, prec), series.s1_term(4, 3, n, q, prec)) for q in ("0.3", "0.5", "2") for n in range(31)
    ]
    return [
        _numeric("S1_4(q) = S1_4(1/q)", pairs, tol),
        _numeric("rho=4 line-2 and line-3 terms coincide", terms, tol),
    ]


def cesaro_checks(prec: int = DEFAULT_PRECISION, tol: Fraction | None = None) -> list[Check]:
    checks = []
    for q in ("2", "3"):
        r = series.sum_S1(3, q, prec)
        qinf = series.q_infinity(1 / Fraction(q), prec)
        checks.append(_numeric(f"rho=3, q={q}: pair gap equals Q_inf(1/q)", [(r.gap, qinf)], CESARO_TOL))
    ps = [(series.s1_partial_sum(3, 3, "0.5", n, prec), v) for n, v in QUOTED_PARTIAL_SUMS.items()]
    checks.append(_numeric("S_100, S_101 at p=0.5 match the quoted values", ps, Fraction(5, 10**10)))
    stable = [(series.s1_partial_sum(3, 3, "0.5", n, prec), series.s1_partial_sum(3, 3, "0.5", n + 2, prec)) for n in range(50, 102)]
    checks.append(_numeric("partial sums settled to ten digits from N=50", stable, Fraction(5, 10**11)))
    checks.append(_numeric("pair average at q=2", [(series.sum_S1(3, 2, prec).value, QUOTED_LIM)], Fraction(5, 10**10)))
    checks.append(_numeric("Q_inf(0.5)", [(series.q_infinity("0.5", prec), QUOTED_QINF)], Fraction(5, 10**9)))
    return checks


def limits_checks(prec: int = DEFAULT_PRECISION, tol: Fraction | None = None) -> list[Check]:
    tol = default_tol(prec) if tol is None else tol
    qs = ("0.2", "0.5", "0.8")
    l1 = [(series.sum_S1(rho, q, prec, line=1).value, series.sum_S1(rho, q, prec, line=2).value) for rho in range(3, 9) for q in qs]
    l2 = [(series.sum_S2(k, q, prec, line=1).value, series.sum_S2(k, q, prec, line=2).value) for k in range(1, 7) for q in qs]

    def monotone(values, limit, increasing):
        vals = [Fraction(v) for v in values]
        steps = all((b > a) if increasing else (b < a) for a, b in zip(vals, vals[1:]))
        toward = all(abs(b - limit) < abs(a - limit) for a, b in zip(vals, vals[1:]))
        return steps and toward

    s1_half = [series.sum_S1(r, "0.5", prec).value for r in range(3, 9)]
    s1_two = [series.sum_S1(r, "2", prec).value for r in range(3, 9)]
    s2_half = [series.sum_S2(k, "0.5", prec).value for k in range(1, 7)]
    s2_two = [series.sum_S2(k, "2", prec).value for k in range(2, 7)]
    trends = [
        ("S1(rho, 0.5) decreases toward 1-q", monotone(s1_half, Fraction(series.s1_limit("0.5")), False)),
        ("S1(rho, 2) increases toward 1", monotone(s1_two, Fraction(series.s1_limit("2")), True)),
        ("S2(kappa, 0.5) increases toward 1+q", monotone(s2_half, Fraction(series.s2_limit("0.5")), True)),
        ("S2(kappa, 2) increases toward 1/(1-q)", monotone(s2_two, Fraction(series.s2_limit("2")), True)),
    ]
    div = [series.gauss_problem2(q, 200, prec).status is series.Status.DIVERGENT for q in ("0.5", "2")]
    div.append(series.sum_S2(1, "2", prec).status is series.Status.DIVERGENT)
    return [
        _numeric("S1 lines 1 and 2 agree for q < 1", l1, tol),
        _numeric("S2 lines 1 and 2 agree for q < 1", l2, tol),
        *(Check(name, ok) for name, ok in trends),
        Check("sum (q;q)_n and S2_1(q>1) are divergent", all(div)),
    ]


RUNNERS: dict[str, Callable[..., list[Check]]] = {
    "heine": heine_checks,
    "rogersfine": rogersfine_checks,
    "muir": muir_checks,
    "ramanujan": ramanujan_checks,
    "duality": duality_checks,
    "cesaro": cesaro_checks,
    "limits": limits_checks,
}


def run_suite(name: str, prec: int = DEFAULT_PRECISION, tol: Fraction | None = None) -> list[Check]:
    names = SUITES if name == "all" else (name,)
    out: list[Check] = []
    for n in names:
        out.extend(RUNNERS[n](prec=prec, tol=tol))
    return out
