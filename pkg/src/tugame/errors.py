"""Exception types raised by the library."""


class GameInputError(ValueError):
    """Malformed game, coalition, allocation or permutation input."""


class GameFileError(GameInputError):
    """A game file could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(ValueError):
    """An operation was called on a game outside its domain."""


class ConvexityViolation(PreconditionError):
    """The operation is only defined for convex games."""


class CapExceeded(PreconditionError):
    """The carrier is too large for an enumerating routine."""
