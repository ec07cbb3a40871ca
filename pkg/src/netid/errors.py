"""Exception hierarchy for netid."""


class NetidError(Exception):
    """Base class for every error raised by this package."""


class GraphParseError(NetidError):
    """A line of an edge-list document could not be parsed."""

    def __init__(self, lineno, line, reason):
        self.lineno = lineno
        self.line = line
        super().__init__(f"line {lineno}: {reason}: {line!r}")


class EdgeLengthError(NetidError, ValueError):
    """An edge length is zero, negative, NaN or infinite."""


class ConnectivityError(NetidError):
    """The graph has more than one connected component."""


class PreconditionError(NetidError, ValueError):
    """An argument violates a documented precondition."""


class InconsistentSystemError(NetidError):
    """The right-hand side of a singular Laplacian system is not centered."""


class NumericalError(NetidError):
    """A dense solve failed; ``condition`` carries the condition estimate."""

    def __init__(self, message, condition=float("nan")):
        self.condition = condition
        super().__init__(f"{message} (condition estimate {condition:.3e})")
