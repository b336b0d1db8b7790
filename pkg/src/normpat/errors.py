class NormpatError(Exception):
    """Base class for all errors raised by normpat."""


class MalformedInputError(NormpatError, ValueError):
    """Input that cannot be parsed or has the wrong shape."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class DomainError(NormpatError, ValueError):
    """Argument outside the domain of an operation."""


class CapacityError(NormpatError):
    """Request exceeds an enumeration or size guard."""
