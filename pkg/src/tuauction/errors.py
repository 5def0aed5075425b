"""Exception hierarchy shared across the package."""


class AuctionError(Exception):
    """Base class for every error raised by tuauction."""


class FormatError(AuctionError, ValueError):
    """An instance file could not be parsed."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ValidationError(AuctionError, ValueError):
    """Parsed data violates an instance or graph invariant."""


class Infeasible(AuctionError):
    """The requested linear program has no feasible point."""


class Unbounded(AuctionError):
    """The requested linear program has an unbounded objective."""


class SolverError(AuctionError, RuntimeError):
    """Internal inconsistency: cycling guard hit or a certificate failed."""


class CapExceeded(AuctionError):
    """A brute-force routine was asked to enumerate beyond its cap."""


class MonopolyViolation(AuctionError):
    """Some column cannot be avoided by any feasible solution."""

    def __init__(self, message, column):
        self.column = column
        super().__init__(message)


class PremiseFailed(AuctionError):
    """The premise of a construction does not hold on this instance."""

    def __init__(self, message, column=None):
        self.column = column
        super().__init__(message)
