"""Exception types raised across the package."""


class ConflevelError(Exception):
    """Base class for all package errors."""


class DomainError(ConflevelError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DegenerateVarianceError(ConflevelError, ValueError):
    """Both groups have zero spread, so no standard error exists."""


class UnsupportedComplementError(ConflevelError, ValueError):
    """The hypothesis has no single-hypothesis complement."""


class BoundInversionError(ConflevelError, ValueError):
    """A bound (star-derived) statement cannot be turned back into a p-value."""


class TruncationError(ConflevelError, ValueError):
    """The grid is too narrow to hold the discretized distribution."""


class OutOfGridError(ConflevelError, ValueError):
    """A value that must lie on the parameter grid falls outside it."""


class MissingHeaderError(ConflevelError, ValueError):
    """A results table has no usable header row."""


class UnprocessableRowError(ConflevelError, ValueError):
    """A results row lacks the fields needed for any inference path."""

    def __init__(self, label, missing):
        self.label = label
        self.missing = list(missing)
        super().__init__(f"row {label!r}: cannot process, missing {', '.join(self.missing)}")
