"""
Inversion of covariance estimates.
"""

import logging
from typing import List, Tuple, Union

import numpy as np
import scipy.linalg as sla

from ..config import CONDITION_CAP, PINV_RELATIVE_CUTOFF
from ..errors import SingularCovarianceError
from .types import CovarianceEstimate

logger = logging.getLogger("simple_rc.covariance")


def invert_covariance(
    sigma: Union[CovarianceEstimate, np.ndarray]
) -> Tuple[np.ndarray, List[str]]:
    """
    Inverse of a symmetric covariance matrix.

    Positive definite matrices with condition number up to CONDITION_CAP are
    inverted exactly. Otherwise eigenvalues above PINV_RELATIVE_CUTOFF times
    the largest are kept and a warning is returned.

    Args:
        sigma: CovarianceEstimate or symmetric array

    Returns:
        (inverse, warnings)

    Raises:
        SingularCovarianceError: if the matrix is zero, non-finite, or has
            no eigenvalue above the cutoff
    """
    A = np.asarray(getattr(sigma, "matrix", sigma), dtype=np.float64)
    A = np.atleast_2d(A)
    if not np.all(np.isfinite(A)):
        raise SingularCovarianceError("Covariance has non-finite entries", context="covariance")
    if not np.any(A):
        raise SingularCovarianceError("Covariance is identically zero", context="covariance")

    w, U = sla.eigh((A + A.T) / 2.0)
    top = float(w.max())
    if w[0] > 0 and top / w[0] <= CONDITION_CAP:
        inverse = (U / w) @ U.T
        return (inverse + inverse.T) / 2.0, []

    keep = w > PINV_RELATIVE_CUTOFF * max(top, 0.0)
    if top <= 0 or not keep.any():
        raise SingularCovarianceError(
            f"Covariance has no positive eigenvalues (max {top:.3g})",
            context="covariance",
        )

    inverse = (U[:, keep] / w[keep]) @ U[:, keep].T
    condition = np.inf if w[0] <= 0 else top / w[0]
    message = (
        f"Covariance ill-conditioned (condition {condition:.3g}); "
        f"pseudo-inverse kept {int(keep.sum())} of {w.shape[0]} directions"
    )
    logger.warning(message)
    return (inverse + inverse.T) / 2.0, [message]
