from decimal import Decimal
from fractions import Fraction

import pytest

from gaussq.errors import DomainError, SingularParameterError
from gaussq.numerics import working_precision
from gaussq.qcore import QParam, polygonal_exponent, qpoch, qpoch_inf, qpoch_rat


def test_qpoch_examples():
    assert qpoch(Fraction(7, 3), Fraction(5, 2), 0) == 1
    assert qpoch(1, Fraction(1, 2), 3) == 0
    assert qpoch(2, 2, 3) == -21
    assert qpoch("2", "2", 3, prec=50) == Decimal(-21)


def test_qpoch_rat_examples():
    assert qpoch_rat(Fraction(1, 2), Fraction(1, 4), 2) == Fraction(7, 16)
    assert qpoch_rat(Fraction(1, 2), Fraction(1, 2), 1) == Fraction(1, 2)
    assert qpoch_rat(1, Fraction(2, 3), 5) == 0


def test_qpoch_negative_n():
    with pytest.raises(DomainError):
        qpoch(1, 2, -1)


def test_qpoch_recurrence():
    for alpha, q in ((Fraction(3, 7), Fraction(2, 5)), (Fraction(-2), Fraction(3, 2))):
        for n in range(1, 15):
            assert qpoch_rat(alpha, q, n) == qpoch_rat(alpha, q, n - 1) * (1 - alpha * q ** (n - 1))


def test_splitting_identity():
    for q in (Fraction(1, 2), Fraction(2, 7), Fraction(5, 3)):
        for kappa in (1, 2, 3):
            qk = q**kappa
            for n in range(21):
                assert qpoch_rat(q, qk, n + 1) == (1 - q) * qpoch_rat(q ** (1 + kappa), qk, n)


def test_qpoch_inf_examples():
    assert qpoch_inf(0, "0.5") == 1
    with working_precision(60):
        ratio = qpoch_inf("0.3", "0.3") / qpoch_inf("0.09", "0.3")
    assert abs(ratio - Decimal("0.7")) < Decimal("1e-45")


def test_qpoch_inf_against_long_product():
    with working_precision(60):
        brute = Decimal(1)
        term = Decimal("0.5")
        for _ in range(10_000):
            brute *= 1 - term
            term *= Decimal("0.5")
    assert abs(Fraction(qpoch_inf("0.5", "0.5")) - Fraction(brute)) < Fraction(1, 10**48)


def test_qpoch_inf_shift_relation():
    for alpha, q in (("0.3", "0.6"), ("-0.7", "0.2"), ("1.5", "0.9")):
        lhs = Fraction(qpoch_inf(alpha, q))
        rhs = (1 - Fraction(alpha)) * Fraction(qpoch_inf(Fraction(alpha) * Fraction(q), q))
        assert abs(lhs - rhs) <= Fraction(1, 10**45) * max(1, abs(lhs))


def test_qpoch_inf_domain():
    for q in ("1", "-1", "1.5"):
        with pytest.raises(DomainError):
            qpoch_inf("0.5", q)


def test_polygonal_exponent():
    assert polygonal_exponent(3, 2) == 3
    assert polygonal_exponent(4, 3) == 9
    assert polygonal_exponent(5, 2) == 5
    for n in range(101):
        assert polygonal_exponent(3, n) == n * (n + 1) // 2
        assert polygonal_exponent(4, n) == n * n
    with pytest.raises(DomainError):
        polygonal_exponent(2, 1)


def test_qparam():
    qp = QParam.from_value("2")
    assert qp.p == Decimal("0.5") and qp.above_one
    assert not QParam.from_value("1/3").above_one
    with pytest.raises(DomainError):
        QParam.from_value(0)
    with pytest.raises(SingularParameterError):
        QParam.from_value(1)
    with pytest.raises(SingularParameterError):
        QParam.from_value(Decimal(1) + Decimal("1e-47"))
    with working_precision(50):
        assert abs(qp.p * qp.q - 1) < Decimal("1e-49")
