"""Exception hierarchy for avecond."""


class AvecondError(Exception):
    """Base class for all library errors."""


class SingularMatrixError(AvecondError):
    """A pivot fell below the singularity threshold during factorization."""


class NoConvergenceError(AvecondError):
    """An iteration hit its cap before reaching the requested tolerance."""


class DimensionTooLargeError(AvecondError):
    """The requested exhaustive computation exceeds its dimension cap."""


class NotSymmetricError(AvecondError):
    """A symmetric-only routine received an asymmetric matrix."""


class NotRegularError(AvecondError):
    """The diagonal-shift family [A-I, A+I] contains a singular matrix."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NoSolutionError(AvecondError):
    """No sign pattern admits a consistent solution."""


class MultipleSolutionsError(AvecondError):
    """More than one solution was found where a unique one was requested."""

    def __init__(self, message, solutions=None):
        super().__init__(message)
        self.solutions = solutions or []


class OneIsEigenvalueError(AvecondError):
    """M - I is singular, so the complementarity transform is undefined."""


class NotPMatrixError(AvecondError):
    """A P-matrix precondition failed."""


class IdentityMismatchError(AvecondError):
    """Two computation routes that must agree disagreed beyond tolerance."""


class ZeroRightHandSideError(AvecondError):
    """Relative bounds are undefined for a (numerically) zero right-hand side."""


class ParseError(AvecondError):
    """Malformed matrix/vector text input."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + loc)
        self.line = line
        self.column = column


class DimensionMismatchError(AvecondError):
    """Input dimensions are inconsistent with each other."""
