"""Exception types shared across the package.

Domain and precondition violations raise plain :class:`ValueError` (or the
:class:`CsvError` subclass, which carries coordinates).  Exhausted search or
enumeration budgets raise :class:`BudgetError` so callers can distinguish
"input is wrong" from "input is too big for this method".
"""

from __future__ import annotations


class BudgetError(RuntimeError):
    """A search or enumeration exceeded its configured budget.

    ``best_size``/``best_vertices`` carry the best solution found before the
    budget ran out, when the operation has one.
    """

    def __init__(self, message: str, *, best_size: int | None = None,
                 best_vertices: frozenset[int] | None = None):
        super().__init__(message)
        self.best_size = best_size
        self.best_vertices = best_vertices


class CsvError(ValueError):
    """A CSV file could not be parsed into a numeric feature matrix."""

    def __init__(self, message: str, *, record: int | None = None,
                 column: str | int | None = None):
        super().__init__(message)
        self.record = record
        self.column = column
