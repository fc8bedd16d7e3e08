"""Exception types raised by the package."""


class MafaError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(MafaError, ValueError):
    """An argument violates a documented precondition."""


class UnsupportedSizeError(MafaError, ValueError):
    """The problem size is outside what a solver supports."""


class NoSolutionError(MafaError):
    """No feasible point exists in the searched set."""


class NumericFailureError(MafaError, ArithmeticError):
    """A non-finite value appeared during optimization."""

    def __init__(self, message, generation=None):
        super().__init__(message)
        self.generation = generation
