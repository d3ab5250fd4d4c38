"""Exception types shared across the package."""


class RecbenchError(Exception):
    """Base class for all errors raised by this package."""


class MovielensParseError(RecbenchError, ValueError):
    """A data file line could not be parsed; carries the 1-based line number."""

    def __init__(self, line_number: int, message: str):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


class DuplicateRatingError(RecbenchError, ValueError):
    """The same (user, movie) pair appears more than once."""


class UnknownIdError(RecbenchError, LookupError):
    """A user or movie identifier is not part of the matrix."""


class DimensionMismatchError(RecbenchError, ValueError):
    """Two interval vectors of different lengths were combined."""


class EmptyExtentError(RecbenchError, ValueError):
    """A common description was requested for an empty user set."""


class SplitError(RecbenchError, ValueError):
    """An evaluation split could not be formed."""


class EvaluationError(RecbenchError, ValueError):
    """Evaluation inputs are inconsistent or out of range."""
