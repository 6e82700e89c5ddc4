"""Shared exception types."""


class EnumerationCapExceeded(RuntimeError):
    """An exhaustive scan hit its output-size cap.

    ``partial`` holds whatever was collected before the cap fired, so callers
    can inspect an incomplete result instead of losing it.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class InternalConsistencyError(RuntimeError):
    """An identity that is guaranteed by construction failed to verify."""
