"""Exception types shared across the package.

Every error raised on a bad input or a failed numerical step derives from
:class:`EventGarchError` so callers can catch one base type at the pipeline
boundary.
"""

from __future__ import annotations


class EventGarchError(Exception):
    """Base class for all package-specific errors."""


class DataValidationError(EventGarchError):
    """Raised when input data violates a documented precondition.

    Carries an ``issues`` list with one human-readable string per offending
    row or field so a caller can report all problems at once.
    """

    def __init__(self, message: str, issues: list[str] | None = None):
        super().__init__(message)
        self.issues: list[str] = issues if issues is not None else []

    def __str__(self) -> str:
        base = super().__str__()
        if self.issues:
            details = "; ".join(self.issues[:10])
            more = len(self.issues) - 10
            if more > 0:
                details += f"; ... and {more} more"
            return f"{base}: {details}"
        return base


class InsufficientDataError(EventGarchError):
    """Raised when a series is too short for the requested computation."""


class DegenerateInputError(EventGarchError):
    """Raised when input is constant or otherwise carries no usable variation."""


class EstimationError(EventGarchError):
    """Raised when a numerical estimation step cannot produce a finite result."""


class PipelineError(EventGarchError):
    """Raised when a pipeline stage fails; names the stage that failed."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"stage '{stage}': {message}")
        self.stage = stage
