"""Term-by-term summation with a quiet-window stop and a non-decay detector.

Callers must already be inside a :func:`~gaussq.numerics.working_precision`
block; every addition rounds in that context.
"""

from __future__ import annotations

import enum
from collections import deque
from decimal import Decimal
from typing import Iterable

from .errors import BudgetExceededError, NonDecayingTermsError

DEFAULT_MAX_TERMS = 100_000
QUIET_WINDOW = 5
DECAY_WINDOW = 20
DECAY_START = 40


class Direction(str, enum.Enum):
    PLUS_INF = "+inf"
    MINUS_INF = "-inf"
    OSCILLATING = "oscillating"


def threshold(prec: int) -> Decimal:
    return Decimal(10) ** (-(prec + 10))


def classify(terms: Iterable[Decimal]) -> Direction:
    signs = {t.is_signed() for t in terms if not t.is_zero()}
    if signs == {False}:
        return Direction.PLUS_INF
    if signs == {True}:
        return Direction.MINUS_INF
    return Direction.OSCILLATING


def sum_terms(
    terms: Iterable[Decimal],
    prec: int,
    max_terms: int = DEFAULT_MAX_TERMS,
    quiet: int = QUIET_WINDOW,
) -> tuple[Decimal, int, Decimal]:
    """Add terms until ``quiet`` consecutive ones fall below ``10^-(P+10)``.

    Returns ``(total, terms_used, tail_bound)``. Raises NonDecayingTermsError
    when, past term 40, the smallest magnitude in the latest 20-term window is
    no smaller than in the window before it while terms are still above the
    threshold.
    """
    eps = threshold(prec)
    total = Decimal(0)
    run = 0
    tail = Decimal(0)
    recent: deque[Decimal] = deque(maxlen=2 * DECAY_WINDOW)
    n = 0
    for n, t in enumerate(terms, start=1):
        total += t
        mag = abs(t)
        if mag < eps:
            run += 1
            tail += mag
            if run >= quiet:
                return total, n, tail + eps
        else:
            run = 0
            tail = Decimal(0)
        recent.append(t)
        if n > DECAY_START and mag > eps and len(recent) == recent.maxlen:
            window = list(recent)
            older = min(abs(v) for v in window[:DECAY_WINDOW])
            newer = min(abs(v) for v in window[DECAY_WINDOW:])
            if newer >= older:
                raise NonDecayingTermsError(classify(window[DECAY_WINDOW:]).value, n, total)
        if n >= max_terms:
            raise BudgetExceededError(f"series did not settle within {max_terms} terms")
    return total, n, Decimal(0)
