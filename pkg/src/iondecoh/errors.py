"""Exception types shared across the package."""


class IonDecohError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(IonDecohError, TypeError):
    """Dimensionally inconsistent operation or argument."""


class SaltDataError(IonDecohError, ValueError):
    """Malformed salt data file; carries the 1-based line number when known."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class ValidationError(IonDecohError, ValueError):
    """A value fails a physical or configuration constraint."""
