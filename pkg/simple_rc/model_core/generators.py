"""
Mean-matrix construction, model validation and Bernoulli sampling.
"""

import logging
from typing import Optional

import numpy as np

from ..config import ROW_SUM_TOLERANCE, SYMMETRY_TOLERANCE
from ..errors import PreconditionError
from ..spectral.types import AdjacencyMatrix
from .models import MeanMatrix, NetworkModel, ValidationReport

logger = logging.getLogger("simple_rc.model_core")


def validate_model(model: NetworkModel) -> ValidationReport:
    """
    Check the model conditions.

    Reports row-stochastic membership, positivity, kernel symmetry and range,
    and the bound max h_ij <= 1 - epsilon.

    Args:
        model: NetworkModel to check

    Returns:
        ValidationReport; ok iff no violations
    """
    report = ValidationReport()
    Pi, P = model.membership, model.kernel

    for problem in model.dimension_problems():
        report.add(problem)
    if not report.ok:
        return report

    if np.any(Pi < 0):
        report.add("membership-nonnegative: negative membership entries")
    row_sums = Pi.sum(axis=1)
    bad_rows = np.flatnonzero(np.abs(row_sums - 1.0) > ROW_SUM_TOLERANCE)
    if bad_rows.size:
        i = int(bad_rows[0])
        report.add(
            f"row-stochastic: {bad_rows.size} rows do not sum to 1 "
            f"(row {i} sums to {row_sums[i]:.12g})"
        )

    degrees = model.degree_vector()
    if np.any(degrees <= 0):
        report.add("positivity: degree parameters must be strictly positive")

    if np.max(np.abs(P - P.T)) > SYMMETRY_TOLERANCE:
        report.add("kernel-symmetry: P is not symmetric")
    else:
        report.kernel_eigenvalues = np.linalg.eigvalsh((P + P.T) / 2).tolist()
    if np.any(P < 0) or np.any(P > 1):
        report.add("kernel-range: P entries must lie in [0, 1]")

    H = mean_matrix(model).values
    report.max_h = float(H.max()) if H.size else 0.0
    if report.max_h > 1.0 - model.epsilon:
        report.add(
            f"h-bound: max h_ij = {report.max_h:.6g} exceeds 1 - eps = "
            f"{1.0 - model.epsilon:.6g}"
        )

    if report.ok:
        logger.debug(f"Model '{model.name}' valid: max h = {report.max_h:.4g}")
    else:
        logger.debug(f"Model '{model.name}' violations: {report.violations}")
    return report


def renormalize_membership(membership: np.ndarray) -> np.ndarray:
    """
    Rescale membership rows to sum to one.

    Explicit opt-in; validate_model never renormalizes.
    """
    Pi = np.asarray(membership, dtype=np.float64)
    if np.any(Pi < 0):
        raise PreconditionError("Cannot renormalize negative memberships")
    sums = Pi.sum(axis=1, keepdims=True)
    if np.any(sums == 0):
        raise PreconditionError("Cannot renormalize an all-zero membership row")
    return Pi / sums


def mean_matrix(model: NetworkModel) -> MeanMatrix:
    """
    H = Theta Pi P Pi^T Theta (DCMM) or theta Pi P Pi^T (MM).

    Raises:
        PreconditionError: on dimension mismatch
    """
    problems = model.dimension_problems()
    if problems:
        raise PreconditionError("; ".join(problems))

    weighted = model.membership * model.degree_vector()[:, None]
    H = weighted @ model.kernel @ weighted.T
    H = (H + H.T) / 2.0
    H.setflags(write=False)
    return MeanMatrix(H, rank_k=True)


def sample_adjacency(
    model: NetworkModel,
    seed: int,
    mean: Optional[MeanMatrix] = None
) -> AdjacencyMatrix:
    """
    Draw a symmetric Bernoulli adjacency matrix.

    Upper-triangle entries are drawn in row-major order from a Philox
    (counter-based) stream keyed by the seed, so the draw is a pure function
    of (model, seed).

    Args:
        model: NetworkModel
        seed: non-negative integer seed
        mean: precomputed mean matrix of the model (optional)

    Returns:
        AdjacencyMatrix
    """
    H = (mean if mean is not None else mean_matrix(model)).values
    n = H.shape[0]
    rng = np.random.Generator(np.random.Philox(int(seed)))

    offset = 0 if model.self_loops else 1
    rows, cols = np.triu_indices(n, k=offset)
    draws = (rng.random(rows.shape[0]) < H[rows, cols]).astype(np.int8)

    X = np.zeros((n, n), dtype=np.int8)
    X[rows, cols] = draws
    X[cols, rows] = draws
    return AdjacencyMatrix(X, self_loops=model.self_loops)
