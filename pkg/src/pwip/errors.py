class PwipError(Exception):
    """Base class for all errors raised by this package."""


class ContractError(PwipError, ValueError):
    """An operation was called outside its precondition."""


class SizeError(PwipError, ValueError):
    """An exhaustive search was asked to cover too large a space."""


class ParseError(PwipError, ValueError):
    """Malformed DIMACS or instance text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class WitnessError(PwipError, ValueError):
    """A certificate could not be built from the supplied assignment."""
