import random
from fractions import Fraction

import pytest

from gaussq import verify


@pytest.mark.parametrize("suite", verify.SUITES)
def test_suite_passes(suite):
    checks = verify.run_suite(suite)
    assert checks
    failed = [c.name for c in checks if not c.passed]
    assert not failed


def test_random_heine_params_are_admissible():
    rng = random.Random(5)
    for _ in range(50):
        p = verify.random_heine_params(rng)
        a, b, c, t = (Fraction(v) for v in (p.alpha, p.beta, p.gamma, p.tau))
        for new_arg in (b, c / b, a * b * t / c, a, c / a):
            assert abs(new_arg) < 1
        assert abs(t) < 1 and abs(a * t) < 1 and abs(b * t) < 1


def test_tolerance_is_respected():
    assert verify.default_tol(50) == Fraction(1, 10**40)
    strict = verify.run_suite("ramanujan", tol=Fraction(1, 10**60))
    assert not all(c.passed for c in strict)


def test_heine_is_seeded():
    a = [(c.name, c.max_dev) for c in verify.heine_checks(count=3)]
    b = [(c.name, c.max_dev) for c in verify.heine_checks(count=3)]
    assert a == b
