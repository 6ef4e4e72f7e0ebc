"""Error hierarchy shared by all modules.

Every error carries a stable machine-readable ``code`` so the CLI can emit
structured error objects and pick the right exit status.
"""

from __future__ import annotations


class IntChebError(Exception):
    """Base class; ``code`` is a stable kebab-case identifier."""

    code = "error"

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code


class PreconditionError(IntChebError):
    """An operation was called on inputs violating its contract.  Exit 2."""

    code = "precondition"


class ZeroPolynomialError(PreconditionError):
    code = "zero-polynomial"


class BadIntervalError(PreconditionError):
    code = "bad-interval"


class BadInputError(PreconditionError):
    code = "bad-input"


class UndecidedError(IntChebError):
    """Exact decision procedure hit its configured cap; no answer is given."""

    code = "undecided"


class PrecisionExhaustedError(IntChebError):
    """Adaptive precision reached its cap without certifying the result.  Exit 3."""

    code = "precision-exhausted"


class BudgetExceededError(IntChebError):
    """A configured search budget ran out before the computation finished.  Exit 3."""

    code = "budget-exceeded"
