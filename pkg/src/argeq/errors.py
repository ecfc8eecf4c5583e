"""Exception types shared across the package."""


class ArgeqError(Exception):
    """Base class for errors raised by argeq."""


class ParseError(ArgeqError):
    """Malformed input text (framework, value or vote file)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OracleCapExceededError(ArgeqError):
    """Exhaustive enumeration was requested on a framework above the cap."""


class ConvergenceError(ArgeqError):
    """A fixed-point solver did not reach its tolerance within the cap."""

    def __init__(self, message: str, residual: float | None = None):
        self.residual = residual
        super().__init__(message)
