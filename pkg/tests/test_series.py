from decimal import Decimal
from fractions import Fraction
from itertools import cycle, islice, repeat

import pytest

from gaussq._summation import Direction, classify, sum_terms
from gaussq.errors import BudgetExceededError, DomainError, NonBiconvergentTailError, SingularParameterError
from gaussq.numerics import working_precision
from gaussq.qcore import qpoch_inf
from gaussq.series import (
    SeriesSpec,
    Status,
    SumResult,
    cesaro_pair_average,
    gauss_problem2,
    q_infinity,
    s1_limit,
    s1_partial_sum,
    s1_term,
    s2_limit,
    s2_term,
    sum_S1,
    sum_S2,
)

TOL = Fraction(1, 10**40)


def dev(a, b):
    return abs(Fraction(a) - Fraction(b))


def test_s1_examples():
    r = sum_S1(3, "0.5")
    assert r.status is Status.CONVERGED and dev(r.value, "0.610321518048") < Fraction(5, 10**12)
    r = sum_S1(3, "2")
    assert r.status is Status.CESARO
    assert dev(r.value, "0.427525130255") < Fraction(5, 10**12)
    assert dev(r.gap, "1.296841253") < Fraction(5, 10**9)
    assert dev(sum_S1(4, "2").value, "0.560562104001") < Fraction(5, 10**12)
    assert sum_S1(3, "3").status is Status.CESARO
    assert dev(sum_S1(3, "3").value, "0.4131192691") < Fraction(5, 10**10)
    assert dev(sum_S1(5, "0.5").value, "0.531006097764") < Fraction(5, 10**12)


def test_s2_examples():
    r = sum_S2(2, "2")
    assert r.status is Status.CONVERGED and dev(r.value, "-2.163945038886") < Fraction(5, 10**12)
    r = sum_S2(1, "2")
    assert r.status is Status.DIVERGENT and r.value is None and r.direction is Direction.MINUS_INF
    assert dev(sum_S2(3, "0.5").value, "1.483398918062") < Fraction(5, 10**12)
    assert dev(sum_S2(3, "2").value, "-1.356278068046") < Fraction(5, 10**12)


def test_singular_q():
    for fn, param in ((sum_S1, 3), (sum_S2, 2)):
        with pytest.raises(SingularParameterError):
            fn(param, 1)
        with pytest.raises(DomainError):
            fn(param, "-0.5")


def test_line_selection_errors():
    with pytest.raises(DomainError):
        sum_S1(3, "2", line=1)
    with pytest.raises(DomainError):
        sum_S2(2, "0.5", line=3)


def test_line_agreement_q_below_one():
    for q in ("0.2", "0.5", "0.8"):
        for rho in range(3, 9):
            assert dev(sum_S1(rho, q, line=1).value, sum_S1(rho, q, line=2).value) < TOL
        for kappa in range(1, 7):
            assert dev(sum_S2(kappa, q, line=1).value, sum_S2(kappa, q, line=2).value) < TOL


def test_rewriting_line2_is_line3_at_reciprocal():
    for q in (Fraction(3, 10), Fraction(1, 2), Fraction(2)):
        for n in range(25):
            assert dev(s1_term(4, 2, n, q), s1_term(4, 3, n, 1 / q)) < TOL
            assert dev(s1_term(6, 2, n, q), s1_term(6, 3, n, 1 / q)) < TOL
            assert dev(s2_term(3, 2, n, q), s2_term(3, 3, n, 1 / q)) < TOL


def test_s1_term_examples():
    assert s1_term(3, 1, 2, "0.5") == Decimal("0.125")
    assert s1_term(3, 3, 1, "0.5") == Decimal("-1.2")


def test_self_duality():
    for q in ("0.3", "0.5", "0.7"):
        assert dev(sum_S1(4, q).value, sum_S1(4, 1 / Fraction(q)).value) < TOL


def test_cesaro_grandi():
    lim, gap, n = cesaro_pair_average((Decimal((-1) ** k) for k in range(1000)), 50)
    assert lim == Decimal("0.5") and gap == 1 and n % 2 == 0


def test_cesaro_absolutely_convergent():
    terms = (Decimal(1) / Decimal(2) ** k for k in range(10_000))
    lim, gap, _ = cesaro_pair_average(terms, 50)
    assert gap < Decimal("1e-40")
    assert dev(lim, 2) < TOL


def test_cesaro_budget():
    with pytest.raises(NonBiconvergentTailError):
        cesaro_pair_average((Decimal(k) for k in range(10**6)), 50, max_terms=500)
    with pytest.raises(NonBiconvergentTailError):
        cesaro_pair_average(iter([Decimal(1), Decimal(2)]), 50)


def test_cesaro_quoted_partial_sums():
    assert dev(s1_partial_sum(3, 3, "0.5", 100), "1.0759457568") < Fraction(5, 10**10)
    assert dev(s1_partial_sum(3, 3, "0.5", 101), "-0.2208954963") < Fraction(5, 10**10)
    for n in range(50, 100):
        assert dev(s1_partial_sum(3, 3, "0.5", n), s1_partial_sum(3, 3, "0.5", n + 2)) < Fraction(5, 10**11)


def test_cesaro_gap_is_q_infinity():
    for q in ("2", "3", "5"):
        r = sum_S1(3, q)
        assert dev(r.gap, q_infinity(1 / Fraction(q))) < Fraction(1, 10**9)


def test_q_infinity():
    assert dev(q_infinity("0.5"), "1.296841253") < Fraction(5, 10**10)
    assert q_infinity(0) == 1
    with working_precision(70):
        p = Decimal("0.3")
        brute = Decimal(1)
        for n in range(1, 501):
            brute *= (1 + p ** (2 * n - 1)) / (1 + p ** (2 * n))
    assert dev(q_infinity("0.3"), brute) < TOL
    with pytest.raises(DomainError):
        q_infinity(1)


def test_limits():
    assert s1_limit("0.5") == Decimal("0.5")
    assert s1_limit("2") == 1
    assert s2_limit("2") == -1
    assert s2_limit("0.5") == Decimal("1.5")
    with pytest.raises(SingularParameterError):
        s2_limit(1)


def test_monotone_trends():
    half = [Fraction(sum_S1(r, "0.5").value) for r in range(3, 9)]
    two = [Fraction(sum_S1(r, "2").value) for r in range(3, 9)]
    assert all(b < a for a, b in zip(half, half[1:])) and half[-1] > Fraction(1, 2)
    assert all(b > a for a, b in zip(two, two[1:])) and two[-1] < 1
    s2_two = [Fraction(sum_S2(k, "2").value) for k in range(2, 7)]
    assert all(b > a for a, b in zip(s2_two, s2_two[1:])) and s2_two[-1] < -1


def test_gauss_problem2():
    r = gauss_problem2("0.5", 200)
    assert r.status is Status.DIVERGENT and r.value is None
    assert abs(qpoch_inf("0.5", "0.5") - Decimal("0.2887880951")) < Decimal("1e-10")
    r = gauss_problem2("2", 20)
    assert r.status is Status.DIVERGENT and r.direction is Direction.OSCILLATING
    with pytest.raises(DomainError):
        gauss_problem2(0)


def test_sum_result_invariants():
    with pytest.raises(ValueError):
        SumResult(None, Status.CONVERGED, 1)
    with pytest.raises(ValueError):
        SumResult(Decimal(1), Status.CESARO, 1)
    with pytest.raises(ValueError):
        SumResult(Decimal(1), Status.DIVERGENT, 1, direction=Direction.PLUS_INF)


def test_series_spec():
    assert SeriesSpec("s1", 3, "0.5").evaluate().value == sum_S1(3, "0.5").value
    with pytest.raises(DomainError):
        SeriesSpec("s1", 2, "0.5")
    with pytest.raises(DomainError):
        SeriesSpec("s2", 0, "0.5")


def test_precision_changes_digits_not_value():
    lo = sum_S1(5, "2", prec=30).value
    hi = sum_S1(5, "2", prec=120).value
    assert dev(lo, hi) < Fraction(1, 10**29)
    assert len(hi.as_tuple().digits) > 100


def test_summation_detector_and_budget():
    with working_precision(60):
        with pytest.raises(DomainError) as info:
            sum_terms((Decimal(-1) for _ in range(1000)), 50)
        assert info.value.direction == "-inf"
        with pytest.raises(DomainError) as info:
            sum_terms((Decimal(k) * (-1) ** k for k in range(1000)), 50)
        assert info.value.direction == "oscillating"
        with pytest.raises(BudgetExceededError):
            sum_terms((Decimal(1) / (k + 1) for k in range(10**6)), 50, max_terms=200)
    assert classify(islice(cycle([Decimal(1), Decimal(-1)]), 20)) is Direction.OSCILLATING
    assert classify(repeat(Decimal(2), 20)) is Direction.PLUS_INF
