"""Exception hierarchy shared by every gaussq module."""

from __future__ import annotations


class GaussQError(Exception):
    """Base class for all library errors."""


class DomainError(GaussQError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class SingularParameterError(DomainError):
    """q = 1 (or numerically indistinguishable from it)."""


class DimensionError(GaussQError, ValueError):
    """Matrix shape is unsuitable for the requested operation."""


class PoleError(GaussQError, ArithmeticError):
    """A denominator factor vanished inside the summation range."""


class InapplicableTransformError(DomainError):
    """A Heine relation was requested whose new argument has modulus >= 1."""


class IndeterminateConvergentError(GaussQError, ArithmeticError):
    def __init__(self, depth: int):
        super().__init__(f"indeterminate convergent at depth {depth}")
        self.depth = depth


class DegenerateHankelError(GaussQError, ArithmeticError):
    """A Hankel minor needed as a divisor is zero.

    ``partial`` holds the coefficients that could still be formed before the
    construction broke down.
    """

    def __init__(self, index: int, partial: list | None = None):
        super().__init__(f"degenerate Hankel minor at index {index}")
        self.index = index
        self.partial = list(partial or [])


class NonDecayingTermsError(DomainError):
    """Series terms stopped shrinking; the series has no ordinary sum."""

    def __init__(self, direction: str, terms_used: int, partial_sum=None):
        super().__init__(f"series terms do not decay (direction {direction}, after {terms_used} terms)")
        self.direction = direction
        self.terms_used = terms_used
        self.partial_sum = partial_sum


class BudgetExceededError(GaussQError, RuntimeError):
    """The max-terms budget ran out before the stopping rule was met."""


class NonBiconvergentTailError(BudgetExceededError):
    """Even- and odd-indexed partial sums did not both settle within budget."""
