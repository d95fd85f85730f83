"""
Error definitions

Deterministic failure handling. Two families map onto CLI exit codes:
precondition problems (exit 2) and numerical failures (exit 3).
"""

from typing import Optional


class SimpleRCError(Exception):
    """Base exception for the library"""

    exit_code = 1

    def __init__(self, message: str, context: Optional[str] = None):
        self.context = context
        super().__init__(message)


class PreconditionError(SimpleRCError):
    """
    Input violates an operation precondition.

    Triggered by:
    - Out-of-range node indices or K0
    - Groups that are too small
    - Non-symmetric input matrices
    """
    exit_code = 2


class ConfigurationError(PreconditionError):
    """Invalid simulation or model configuration"""
    pass


class ContractViolationError(PreconditionError):
    """
    File or matrix does not conform to its declared format.

    Carries the 1-based line number (parse failures) or the offending
    (row, col) index (asymmetric / non-binary entries) when known.
    """

    def __init__(
        self,
        message: str,
        context: Optional[str] = None,
        line: Optional[int] = None,
        index: Optional[tuple] = None
    ):
        self.line = line
        self.index = index
        if line is not None:
            message = f"{message} (line {line})"
        elif index is not None:
            message = f"{message} (at {index})"
        super().__init__(message, context)


class NumericalFailureError(SimpleRCError):
    """Computation could not produce a trustworthy number"""
    exit_code = 3


class NoSignalError(NumericalFailureError):
    """No empirical eigenvalue passes the K0 threshold"""
    pass


class SingularCovarianceError(NumericalFailureError):
    """Covariance estimate is singular beyond the pseudo-inverse policy"""
    pass


class NearSingularRatioError(NumericalFailureError):
    """Leading eigenvector entry too small for a stable ratio"""
    pass


class ConvergenceError(NumericalFailureError):
    """Fixed-point or root search failed"""
    pass


class RankDeficiencyError(NumericalFailureError):
    """Mean matrix has fewer than K nonzero eigenvalues"""
    pass
