"""Exception types shared across the package."""


class CapacityError(Exception):
    """Raised when an exact method would enumerate past the configured cap."""


class NumericalInstabilityError(Exception):
    """Raised when a transform leaves residuals above tolerance."""


class EmptyWorldError(ValueError):
    """Raised when modularity is requested for a world with no edges."""


class ParseError(ValueError):
    """Raised on malformed input files; carries the offending line number."""

    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
