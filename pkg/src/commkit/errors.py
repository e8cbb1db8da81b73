"""Exception hierarchy shared across the package."""


class CommkitError(Exception):
    """Base class for all errors raised by commkit."""


class ArgumentError(CommkitError):
    """Invalid argument or malformed input data."""


class GenerationError(CommkitError):
    """A generator could not satisfy its constraints within its budget."""

    def __init__(self, msg, best=None):
        super().__init__(msg)
        self.best = best


class DetectorError(CommkitError):
    """A detector failed to converge or hit an internal limit."""
