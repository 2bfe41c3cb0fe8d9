"""Exception hierarchy for the fracle package."""


class FracleError(Exception):
    """Base class for all errors raised by fracle."""


class DomainError(FracleError, ValueError):
    """An argument lies outside the domain of a function."""


class InvalidIndexError(FracleError, ValueError):
    """A wavelet serial index is not a positive integer."""


class ConfigurationError(FracleError, ValueError):
    """Invalid solver, grid or problem configuration."""


class InvalidBoundaryError(ConfigurationError):
    """Boundary data cannot be eliminated (d == 0)."""


class NonlinearityError(FracleError, ArithmeticError):
    """f or f' returned a non-finite value."""


class SingularSystemError(FracleError, ArithmeticError):
    """A linear system is numerically singular."""


class ConvergenceError(FracleError, RuntimeError):
    """Quasilinearization did not reach the requested tolerance."""

    def __init__(self, message, last_update=float("nan"), iterations=0):
        super().__init__(message)
        self.last_update = last_update
        self.iterations = iterations


class OracleError(FracleError, RuntimeError):
    """The classical shooting oracle could not bracket a root."""

    def __init__(self, message, bracket=(float("nan"), float("nan"))):
        super().__init__(message)
        self.bracket = bracket
