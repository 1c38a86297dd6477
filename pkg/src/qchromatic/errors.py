"""Exception hierarchy shared by every engine and the CLI."""


class QChromaticError(Exception):
    """Base class for all package errors."""


class ParameterError(QChromaticError, ValueError):
    """An argument violates an operation's precondition."""


class DomainError(QChromaticError, ValueError):
    """The operation is undefined for this input (e.g. a bound on an empty graph)."""


class BudgetError(QChromaticError, RuntimeError):
    """A configured resource budget would be exceeded.

    The message names the budget and the value that would have been required,
    so the caller can decide whether to raise it.
    """

    def __init__(self, budget_name: str, required: int, limit: int):
        self.budget_name = budget_name
        self.required = required
        self.limit = limit
        super().__init__(
            f"{budget_name} budget exceeded: need {required}, limit is {limit}"
        )


class InvariantError(QChromaticError, RuntimeError):
    """An internal cross-check disagreed. Carries the offending data."""

    def __init__(self, message: str, **details):
        self.details = details
        super().__init__(message)
