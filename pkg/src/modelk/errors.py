"""Exception types shared across the package."""


class WorkbenchError(Exception):
    """Base class for domain errors; the CLI maps these to exit code 1."""


class CapExceededError(WorkbenchError):
    """An enumeration grew past its configured element cap."""


class InvalidActionError(WorkbenchError):
    """A purported group action fails the homomorphism or bijection checks."""


class UnsupportedRingError(WorkbenchError):
    """The symbolic calculator has no closed form for this ring/module pair."""


class FormulaError(WorkbenchError):
    """Malformed formula text; carries a 1-based source position."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"line {line}, col {col}: {message}"
        super().__init__(message)
