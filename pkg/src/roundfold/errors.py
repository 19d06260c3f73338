"""Exception types shared across the package."""


class RoundFoldError(Exception):
    """Base class for every error raised by this package."""


class FormatError(RoundFoldError, ValueError):
    """A text file does not follow its grammar."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class ValidationError(RoundFoldError, ValueError):
    """A structure was parsed but breaks one of its invariants."""

    def __init__(self, violations):
        self.violations = [str(v) for v in violations]
        super().__init__("; ".join(self.violations))


class PreconditionError(RoundFoldError, ValueError):
    """An operation was called on input outside its domain."""


class InconsistencyError(RoundFoldError, RuntimeError):
    """Two computations that must agree did not."""
