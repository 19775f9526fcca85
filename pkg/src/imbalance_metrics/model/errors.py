"""Exceptions raised by the evaluation model.

Every error is a `ValueError`, so callers that only care about invalid input can keep
catching that. The two branches tell the command line which exit code to use.
"""
from typing import Optional


class MetricsError(ValueError):
    """Base class of the package errors."""


class DomainError(MetricsError):
    """The input is well formed but not a valid evaluation problem."""


class DegenerateClassError(DomainError):
    """One of the two actual classes is empty (P = 0 or N = 0)."""


class NegativeCountError(DomainError):
    """A confusion matrix count is negative."""


class MismatchedPopulationError(DomainError):
    """Two confusion matrices do not describe the same test set (P or N differ)."""


class UndefinedRatioError(DomainError):
    """A sensitivity ratio was requested at a point where it does not exist."""


class InputError(MetricsError):
    """The input could not be read or parsed."""


class UnknownLabelError(InputError):
    """A label is neither the positive nor the negative label."""


class PredictionFileError(InputError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
