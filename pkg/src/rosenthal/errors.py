"""Semantic exception hierarchy.

Public functions raise these instead of bare ValueError/RuntimeError so
callers can tell apart bad input, exhausted budgets, and genuine internal
inconsistencies (which indicate a bug, never bad input).
"""


class RosenthalError(Exception):
    """Base class for every error raised by this package."""


class DomainError(RosenthalError, ValueError):
    """Input outside the documented domain of an operation."""


class CapacityError(RosenthalError, ValueError):
    """Input beyond the fixed caps of the exact (big-integer) routines."""


class BudgetError(RosenthalError, RuntimeError):
    """A series failed to meet its tail tolerance within the term budget."""


class InconsistencyError(RosenthalError, RuntimeError):
    """An internal cross-check failed; signals an implementation bug."""
