"""
Eigendecomposition of observed networks, data-driven K0 selection and
residual-matrix construction.

All quantities are unrescaled; log is the natural logarithm.
"""

import logging
from typing import Optional, Tuple, Union

import numpy as np
import pandas as pd
import scipy.linalg as sla

from ..config import GROUP_LOG_EXPONENT, PAIR_LOG_EXPONENT
from ..errors import NoSignalError, PreconditionError
from .types import AdjacencyMatrix, ResidualMatrix, Spectrum

logger = logging.getLogger("simple_rc.spectral")

ArrayLike = Union[AdjacencyMatrix, np.ndarray]


def _as_array(X: ArrayLike) -> np.ndarray:
    if isinstance(X, AdjacencyMatrix):
        return X.values
    return np.asarray(X)


def magnitude_order(eigenvalues: np.ndarray) -> np.ndarray:
    """
    Index permutation sorting eigenvalues by |d| descending.

    Ties in magnitude are broken by signed value descending, then by the
    original index.
    """
    idx = np.arange(eigenvalues.shape[0])
    return np.lexsort((idx, -eigenvalues, -np.abs(eigenvalues)))


def fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip columns so each has its largest-magnitude entry positive"""
    if vectors.size == 0:
        return vectors
    pivots = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivots, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def ordered_eigh(A: np.ndarray) -> Spectrum:
    """Full symmetric eigendecomposition in magnitude order"""
    w, U = sla.eigh(np.asarray(A, dtype=np.float64))
    order = magnitude_order(w)
    return Spectrum(w[order], fix_signs(U[:, order]))


def eigendecompose(X: ArrayLike) -> Spectrum:
    """
    Full spectrum of a symmetric (adjacency) matrix.

    Args:
        X: AdjacencyMatrix or symmetric array

    Returns:
        Spectrum with |d_1| >= ... >= |d_n|

    Raises:
        PreconditionError: if X is not symmetric
    """
    A = _as_array(X)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise PreconditionError(f"Expected a square matrix, got {A.shape}")
    if not np.array_equal(A, A.T):
        raise PreconditionError("eigendecompose requires a symmetric matrix")
    spectrum = ordered_eigh(A)
    logger.debug(
        f"Eigendecomposition n={A.shape[0]}: leading |d| = "
        f"{np.abs(spectrum.eigenvalues[:5]).round(3).tolist()}"
    )
    return spectrum


def max_degree_q(X: ArrayLike) -> Tuple[float, float]:
    """
    Maximum node degree and its square root.

    Returns:
        (q_check_squared, q_check); (0, 0) for an empty graph
    """
    A = _as_array(X)
    if A.size == 0:
        return 0.0, 0.0
    q2 = float(A.sum(axis=0).max())
    q2 = max(q2, 0.0)
    return q2, float(np.sqrt(q2))


def k0_threshold(
    q_check: float,
    n: int,
    variant: str = "pair",
    loglog_multiplier: Optional[float] = None
) -> float:
    """
    Eigenvalue threshold for the K0 rule.

    q_check * (log n)^e * C_n with e = 1/2 (pair) or 3/2 (group) and
    C_n = log log n unless a multiplier is supplied.
    """
    if n < 3:
        raise PreconditionError(f"K0 rule needs n >= 3, got n={n}")
    if variant == "pair":
        exponent = PAIR_LOG_EXPONENT
    elif variant == "group":
        exponent = GROUP_LOG_EXPONENT
    else:
        raise PreconditionError(f"Unknown K0 variant '{variant}'")
    c_n = np.log(np.log(n)) if loglog_multiplier is None else loglog_multiplier
    return float(q_check * np.log(n) ** exponent * c_n)


def estimate_k0(
    spectrum: Spectrum,
    q_check: float,
    n: int,
    variant: str = "pair",
    loglog_multiplier: Optional[float] = None
) -> int:
    """
    Data-driven K0: number of leading eigenvalues above the threshold.

    Raises:
        NoSignalError: if no eigenvalue passes
    """
    threshold = k0_threshold(q_check, n, variant, loglog_multiplier)
    passing = np.abs(spectrum.eigenvalues) >= threshold
    if not passing.any():
        raise NoSignalError(
            f"No eigenvalue reaches the {variant} threshold {threshold:.4g} "
            f"(largest |d| = {np.abs(spectrum.eigenvalues).max(initial=0.0):.4g})"
        )
    # magnitude ordering makes the passing set a prefix
    k0 = int(np.flatnonzero(passing).max()) + 1
    logger.debug(f"K0 ({variant}) = {k0} at threshold {threshold:.4g}")
    return k0


def residual_matrix(
    X: ArrayLike,
    spectrum: Spectrum,
    k0: int
) -> ResidualMatrix:
    """
    Residual W_hat = X - sum_{k <= K0} d_k v_k v_k^T.

    Raises:
        PreconditionError: if K0 is outside 1..n
    """
    A = _as_array(X).astype(np.float64)
    if not 1 <= k0 <= A.shape[0]:
        raise PreconditionError(f"K0={k0} outside 1..{A.shape[0]}")
    W = A - spectrum.reconstruct(k0)
    return ResidualMatrix((W + W.T) / 2.0, k0)


def spectrum_to_frame(
    spectrum: Spectrum,
    q_check: Optional[float] = None,
    top: Optional[int] = None
) -> pd.DataFrame:
    """Eigenvalue diagnostics table, optionally with threshold flags"""
    d = spectrum.eigenvalues if top is None else spectrum.eigenvalues[:top]
    frame = pd.DataFrame({
        "rank": np.arange(1, d.shape[0] + 1),
        "eigenvalue": d,
        "magnitude": np.abs(d),
    })
    n = spectrum.n
    if q_check is not None and n >= 3:
        for variant in ("pair", "group"):
            thr = k0_threshold(q_check, n, variant)
            frame[f"passes_{variant}"] = frame["magnitude"] >= thr
    return frame


def spectrum_to_csv(spectrum: Spectrum, path, q_check: Optional[float] = None) -> None:
    """Write eigenvalue diagnostics as CSV"""
    spectrum_to_frame(spectrum, q_check).to_csv(path, index=False, float_format="%.10g")
