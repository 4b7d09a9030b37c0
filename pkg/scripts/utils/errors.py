"""Exception hierarchy for k-tree computations.

Every error carries the CLI exit code it maps to, so the command wrapper in
main.py can turn any failure into a machine-readable JSON line.
"""

from typing import Any


class KTreeError(Exception):
    """Base class for all domain errors."""

    exit_code: int = 1

    def to_dict(self) -> dict[str, Any]:
        """Render the error as a JSON-serializable dict."""
        return {
            "error": type(self).__name__,
            "message": str(self),
            "exit_code": self.exit_code,
        }


class KSpecError(KTreeError, ValueError):
    """A k-spec string could not be parsed, or names a value k <= 1."""

    exit_code = 2


class UsageError(KTreeError):
    """Command-line options are inconsistent (e.g. kmin >= kmax)."""

    exit_code = 2


class InvalidParams(KTreeError, ValueError):
    """Golden parameters (a, b) outside the range an operation requires."""

    exit_code = 3


class UnsupportedRepresentation(KTreeError, TypeError):
    """An exact-only operation was asked of an approximate k."""

    exit_code = 3


class ChildAbsent(KTreeError):
    """The ceil(k)-th child was requested for an indicator in the floor-range."""

    exit_code = 3


class PrecisionExhausted(KTreeError, ArithmeticError):
    """An approximate value could not decide a floor within the digit cap."""

    exit_code = 4

    def __init__(self, message: str, digits: int | None = None) -> None:
        super().__init__(message)
        self.digits = digits


class SizeLimit(KTreeError):
    """Enumeration would exceed the configured node cap."""

    exit_code = 5

    def __init__(self, message: str, limit: int | None = None) -> None:
        super().__init__(message)
        self.limit = limit


class NonIntegerResult(KTreeError, ArithmeticError):
    """A closed form that must be a rational integer evaluated to something else."""


class ConsistencyError(KTreeError, AssertionError):
    """Two independent computations of the same quantity disagree."""
