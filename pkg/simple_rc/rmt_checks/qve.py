"""
Quadratic vector equation

    1 / M_i = -z - sum_j s_ij M_j

solved by fixed-point iteration for real z outside [-2 sqrt(frak M),
2 sqrt(frak M)], frak M = max_i sum_j s_ij.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..config import QVE_MARGIN, QVE_MAX_ITERATIONS, QVE_TOLERANCE
from ..errors import ConvergenceError, PreconditionError

logger = logging.getLogger("simple_rc.rmt_checks")


@dataclass(frozen=True)
class QveSolution:
    """Fixed point M(z) of the QVE for variance profile S"""
    z: float
    values: np.ndarray
    variance: np.ndarray
    residual: float
    iterations: int

    @property
    def diagonal(self) -> np.ndarray:
        """Upsilon(z) = diag(M(z))"""
        return np.diag(self.values)


def support_edge(S: np.ndarray) -> float:
    """2 sqrt(frak M)"""
    S = np.asarray(S, dtype=np.float64)
    frak_m = float(S.sum(axis=1).max()) if S.size else 0.0
    return 2.0 * np.sqrt(max(frak_m, 0.0))


def qve_residual(S: np.ndarray, z: float, M: np.ndarray) -> float:
    """max_i |1/M_i + z + (S M)_i|"""
    return float(np.abs(1.0 / M + z + S @ M).max())


def qve_solve(
    S: np.ndarray,
    z: float,
    tol: float = QVE_TOLERANCE,
    max_iterations: int = QVE_MAX_ITERATIONS,
    margin: float = QVE_MARGIN,
    initial: Optional[np.ndarray] = None
) -> QveSolution:
    """
    Solve the QVE at a real point z.

    Iterates M <- 1 / (-z - S M) from M = -1/z until the residual drops
    below tol * max(1, |z|).

    Args:
        S: n x n nonnegative symmetric variance profile
        z: real evaluation point with |z| > 2 sqrt(frak M) + margin
        tol: residual tolerance
        max_iterations: iteration budget
        margin: distance kept from the support edge
        initial: optional starting vector

    Raises:
        PreconditionError: if z is inside the margin
        ConvergenceError: if the budget runs out
    """
    S = np.asarray(S, dtype=np.float64)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise PreconditionError(f"Variance profile must be square, got {S.shape}")
    if np.any(S < 0):
        raise PreconditionError("Variance profile has negative entries")
    edge = support_edge(S)
    if not abs(z) > edge + margin:
        raise PreconditionError(
            f"|z| = {abs(z):.4g} must exceed 2 sqrt(frak M) + margin = {edge + margin:.4g}"
        )

    n = S.shape[0]
    M = np.full(n, -1.0 / z) if initial is None else np.asarray(initial, dtype=np.float64).copy()
    target = tol * max(1.0, abs(z))

    residual = qve_residual(S, z, M)
    iterations = 0
    while residual >= target:
        if iterations >= max_iterations:
            raise ConvergenceError(
                f"QVE at z={z:.4g} did not converge in {max_iterations} iterations "
                f"(residual {residual:.3g})",
                context="rmt_checks",
            )
        M = 1.0 / (-z - S @ M)
        iterations += 1
        residual = qve_residual(S, z, M)

    logger.debug(f"QVE z={z:.4g}: {iterations} iterations, residual {residual:.3g}")
    return QveSolution(z=float(z), values=M, variance=S, residual=residual, iterations=iterations)
