"""
Spiked eigenvalue locations t_k and the tail-energy diagnostic.

t_k is the root in I_k = {x : |d_k| / (1 + eps0/2) <= |x| <= (1 + eps0/2) |d_k|}
of

    1 + d_k v_k^T U v_k
      - d_k v_k^T U V_-k [D_-k^{-1} + V_-k^T U V_-k]^{-1} V_-k^T U v_k = 0,

U = diag(M(x)). All inputs are on the rescaled X / q scale.
"""

import logging
from typing import Tuple

import numpy as np
from scipy.optimize import brentq

from ..config import EIGENGAP_CAP, QVE_MARGIN
from ..errors import ConvergenceError, PreconditionError
from ..model_core import NetworkModel, mean_matrix, population_spectrum
from .qve import qve_solve, support_edge

logger = logging.getLogger("simple_rc.rmt_checks")


def rescaled_variance(H: np.ndarray, q: float, self_loops: bool = False) -> np.ndarray:
    """S = h (1 - h) / q^2, zero diagonal without self loops"""
    S = H * (1.0 - H) / q ** 2
    if not self_loops:
        np.fill_diagonal(S, 0.0)
    return S


def rescaled_population(model: NetworkModel) -> Tuple[np.ndarray, np.ndarray, np.ndarray, float]:
    """
    Population spectrum and variance profile of X / q, q = sqrt(n theta).

    Returns:
        (eigenvalues, eigenvectors, S, q)
    """
    H = mean_matrix(model).values
    q = float(np.sqrt(model.n * model.sparsity()))
    spectrum = population_spectrum(H, model.K)
    S = rescaled_variance(H, q, model.self_loops)
    return spectrum.eigenvalues / q, spectrum.eigenvectors, S, q


def eigengap_epsilon(eigenvalues: np.ndarray, k: int) -> float:
    """Observed neighbour eigengap ratio minus one, capped at EIGENGAP_CAP"""
    mags = np.abs(np.asarray(eigenvalues, dtype=np.float64))
    idx = k - 1
    ratios = []
    if idx > 0:
        ratios.append(mags[idx - 1] / mags[idx])
    if idx + 1 < mags.shape[0] and mags[idx + 1] > 0:
        ratios.append(mags[idx] / mags[idx + 1])
    eps0 = min(ratios) - 1.0 if ratios else EIGENGAP_CAP
    return min(eps0, EIGENGAP_CAP)


def master_function(
    x: float,
    eigenvalues: np.ndarray,
    eigenvectors: np.ndarray,
    S: np.ndarray,
    k: int
) -> float:
    """Left-hand side of the t_k equation at x (k is 1-based)"""
    d = np.asarray(eigenvalues, dtype=np.float64)
    V = np.asarray(eigenvectors, dtype=np.float64)
    M = qve_solve(S, x).values

    idx = k - 1
    v = V[:, idx]
    value = 1.0 + d[idx] * float(v @ (M * v))

    others = [c for c in range(d.shape[0]) if c != idx]
    if others:
        V_rest = V[:, others]
        UV = V_rest * M[:, None]
        inner = np.diag(1.0 / d[others]) + V_rest.T @ UV
        b = UV.T @ v
        value -= d[idx] * float(b @ np.linalg.solve(inner, b))
    return value


def t_k_solve(
    eigenvalues: np.ndarray,
    eigenvectors: np.ndarray,
    S: np.ndarray,
    k: int,
    xtol: float = 1e-12
) -> float:
    """
    Location t_k of the k-th spiked eigenvalue.

    Args:
        eigenvalues: population spiked eigenvalues (rescaled)
        eigenvectors: n x K population eigenvectors
        S: variance profile (rescaled)
        k: 1-based index

    Raises:
        PreconditionError: if k is out of range
        ConvergenceError: if the bracket is empty or has no sign change
    """
    d = np.asarray(eigenvalues, dtype=np.float64)
    if not 1 <= k <= d.shape[0]:
        raise PreconditionError(f"k={k} outside 1..{d.shape[0]}")

    eps0 = eigengap_epsilon(d, k)
    if eps0 <= 0:
        raise ConvergenceError(f"No eigengap around d_{k}; t_k bracket is empty", context="rmt_checks")

    mag = abs(d[k - 1])
    sign = 1.0 if d[k - 1] > 0 else -1.0
    low = max(mag / (1.0 + eps0 / 2.0), support_edge(S) + 2 * QVE_MARGIN)
    high = (1.0 + eps0 / 2.0) * mag
    if low >= high:
        raise ConvergenceError(
            f"d_{k} = {d[k - 1]:.4g} is not outside the noise support", context="rmt_checks"
        )

    def f(r: float) -> float:
        return master_function(sign * r, d, eigenvectors, S, k)

    f_low, f_high = f(low), f(high)
    if np.sign(f_low) == np.sign(f_high):
        raise ConvergenceError(
            f"No sign change for t_{k} on [{low:.4g}, {high:.4g}]", context="rmt_checks"
        )
    root = brentq(f, low, high, xtol=xtol)
    t_k = sign * root
    logger.debug(f"t_{k} = {t_k:.8g} (d_{k} = {d[k - 1]:.8g})")
    return float(t_k)


def tail_energy(
    eigenvalues: np.ndarray,
    eigenvectors: np.ndarray,
    k0: int,
    theta: float
) -> float:
    """
    theta^{-1} max_{i,j} |sum_{k > K0} d_k v_k(i) v_k(j)|; zero when K0 >= K.
    """
    d = np.asarray(eigenvalues, dtype=np.float64)
    if theta <= 0:
        raise PreconditionError(f"theta must be positive, got {theta}")
    if k0 >= d.shape[0]:
        return 0.0
    V = np.asarray(eigenvectors, dtype=np.float64)[:, k0:]
    tail = (V * d[k0:]) @ V.T
    return float(np.abs(tail).max() / theta)
