"""
Population-level quantities used as oracles: the spectrum of H and the
membership-profile distances behind the null and alternative hypotheses.
"""

import logging
from itertools import combinations
from typing import Sequence, Union

import numpy as np

from ..config import RANK_TOLERANCE, RECONSTRUCTION_TOLERANCE
from ..errors import PreconditionError, RankDeficiencyError
from ..spectral.eigen import ordered_eigh
from ..spectral.types import Spectrum
from .models import MeanMatrix

logger = logging.getLogger("simple_rc.model_core")


def population_spectrum(H: Union[MeanMatrix, np.ndarray], K: int) -> Spectrum:
    """
    Leading K eigenpairs of the mean matrix.

    Raises:
        PreconditionError: if H is not symmetric or K is out of range
        RankDeficiencyError: if fewer than K eigenvalues are nonzero
    """
    A = np.asarray(getattr(H, "values", H), dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or not np.array_equal(A, A.T):
        raise PreconditionError("population_spectrum requires a symmetric square matrix")
    n = A.shape[0]
    if not 1 <= K <= n:
        raise PreconditionError(f"K={K} outside 1..{n}")

    full = ordered_eigh(A)
    scale = max(float(np.abs(A).max()), 1.0) * n
    if abs(full.eigenvalues[K - 1]) <= RANK_TOLERANCE * scale:
        raise RankDeficiencyError(
            f"Mean matrix has rank below K={K}: |d_K| = {abs(full.eigenvalues[K - 1]):.3g}"
        )
    spectrum = Spectrum(full.eigenvalues[:K].copy(), full.eigenvectors[:, :K].copy())
    residual = float(np.abs(spectrum.reconstruct() - A).max())
    if residual > RECONSTRUCTION_TOLERANCE * max(float(np.abs(A).max()), 1.0):
        logger.warning(f"Rank-{K} spectrum leaves residual {residual:.3g}; H has rank above K")
    return spectrum


def _group_rows(membership: np.ndarray, group: Sequence[int]) -> np.ndarray:
    nodes = list(group)
    if len(nodes) < 2:
        raise PreconditionError(f"Need at least 2 nodes, got {len(nodes)}")
    return np.asarray(membership, dtype=np.float64)[nodes]


def null_closeness(membership: np.ndarray, group: Sequence[int]) -> float:
    """max over pairs in the group of ||pi_i - pi_j||_2"""
    rows = _group_rows(membership, group)
    diffs = rows[:, None, :] - rows[None, :, :]
    return float(np.sqrt((diffs ** 2).sum(axis=-1)).max())


def alt_separation(membership: np.ndarray, group: Sequence[int]) -> float:
    """
    max over pairs of lambda_min^{1/2} of the 2x2 Gram matrix of (pi_i, pi_j).
    """
    rows = _group_rows(membership, group)
    best = 0.0
    for a, b in combinations(range(rows.shape[0]), 2):
        pair = rows[[a, b]].T
        gram = pair.T @ pair
        lam_min = np.linalg.eigvalsh(gram)[0]
        best = max(best, float(np.sqrt(max(lam_min, 0.0))))
    return best
