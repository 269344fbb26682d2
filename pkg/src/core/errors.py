"""
Exception hierarchy shared by the library and the CLI.

The CLI maps each family to an exit status:
usage problems -> 2, guard rejections -> 3, failed verifications -> 1.
"""

from typing import Any, Dict, Optional


class CascadeInvariantsError(Exception):
    """Base class for all errors raised by this package."""

    exit_status = 1


class InadmissibleTypeError(CascadeInvariantsError, ValueError):
    """Unknown Cartan type or a rank outside the admissible range."""

    exit_status = 2


class OracleScopeError(CascadeInvariantsError, ValueError):
    """An operation was asked for outside the algebras it covers."""

    exit_status = 2


class GuardExceededError(CascadeInvariantsError):
    """A size guard rejected a computation before it started."""

    exit_status = 3

    def __init__(self, message: str, size_report: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.size_report = dict(size_report or {})


class VerificationError(CascadeInvariantsError):
    """A structural identity failed; the computation cannot be trusted."""


class DegenerateSampleError(CascadeInvariantsError):
    """No generic sample point was found within the retry budget."""


class PoleError(CascadeInvariantsError, ZeroDivisionError):
    """A rational function was evaluated where its denominator vanishes."""
