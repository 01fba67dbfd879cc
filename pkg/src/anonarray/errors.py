"""Exception types shared across the package."""

from __future__ import annotations


class AnonArrayError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(AnonArrayError, ValueError):
    """An argument is out of range or inconsistent with the schema."""


class ParseError(AnonArrayError):
    """A document failed to parse; carries location when known."""

    def __init__(self, message, filename=None, line=None, column=None):
        self.filename = filename
        self.line = line
        self.column = column
        loc = []
        if filename is not None:
            loc.append(str(filename))
        if line is not None:
            loc.append(f"line {line}")
        if column is not None:
            loc.append(f"column {column}")
        prefix = ", ".join(loc)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.message = message


class InfeasibleError(AnonArrayError):
    """The constraint system admits no solution; carries the report."""

    def __init__(self, report):
        self.report = report
        super().__init__(
            "constraint system is infeasible: "
            + "; ".join(reason for _, reason in report.witnesses)
        )


class BudgetExceededError(AnonArrayError):
    """Row budget ran out before the target guarantee was met."""

    def __init__(self, partial_rows, remaining):
        self.partial_rows = partial_rows
        self.remaining = remaining
        super().__init__(
            f"row budget exhausted with {len(remaining)} credentials still deficient"
        )
