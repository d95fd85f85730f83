"""
Covariance of pair contrasts for both statistic variants.

Variant T contrasts the eigenvector rows V_K0(i) - V_K0(j). Its covariance
is that of (e_i - e_j)^T W V D^{-1}:

    Sigma[a, b] = ( sum_l (s_il + s_jl) v_a(l) v_b(l)
                    - s_ij (v_a(i) v_b(j) + v_a(j) v_b(i)) ) / (d_a d_b)

Variant T_ratio contrasts the ratio vectors Y_i - Y_j. To first order
Y_i(k) moves by sum_l W_il G_i[l, k] with

    G_i[l, k] = v_k(l) / (t_k v_1(i)) - v_k(i) v_1(l) / (t_1 v_1(i)^2)

and the shared edge W_ij enters both rows, so

    Sigma2 = sum_{l != j} s_il G_i[l] G_i[l]^T
           + sum_{l != i} s_jl G_j[l] G_j[l]^T
           + s_ij c c^T,          c = G_i[j] - G_j[i].
"""

import logging
from typing import Union

import numpy as np

from ..config import RATIO_GUARD_FACTOR
from ..enums import Variant
from ..errors import NearSingularRatioError, PreconditionError
from ..spectral.types import Spectrum
from .types import CovarianceEstimate, PluginSource, PopulationSource, RatioVector

logger = logging.getLogger("simple_rc.covariance")

Source = Union[PopulationSource, PluginSource]


def _check_pair(source: Source, i: int, j: int, k0: int) -> None:
    n = source.spectrum.n
    if i == j:
        raise PreconditionError("Covariance needs two distinct nodes")
    for node in (i, j):
        if not 0 <= node < n:
            raise PreconditionError(f"Node {node} outside 0..{n - 1}")
    if not 1 <= k0 <= source.spectrum.rank:
        raise PreconditionError(f"K0={k0} outside available rank 1..{source.spectrum.rank}")


def _symmetric(A: np.ndarray) -> np.ndarray:
    return (A + A.T) / 2.0


def sigma_pair(source: Source, i: int, j: int, k0: int) -> CovarianceEstimate:
    """
    Covariance of V_K0(i) - V_K0(j) (variant T).

    Args:
        source: PopulationSource (oracle) or PluginSource (estimate)
        i, j: distinct 0-based nodes
        k0: number of leading eigenpairs

    Returns:
        K0 x K0 CovarianceEstimate
    """
    _check_pair(source, i, j, k0)
    d, V = source.eigen(k0)
    s_i, s_j = source.variance_row(i), source.variance_row(j)

    weighted = V * (s_i + s_j)[:, None]
    A = weighted.T @ V
    cross = s_i[j] * (np.outer(V[i], V[j]) + np.outer(V[j], V[i]))
    sigma = _symmetric((A - cross) / np.outer(d, d))

    return CovarianceEstimate(
        matrix=sigma,
        provenance=source.provenance,
        pair=(i, j),
        k0=k0,
        variant=Variant.T,
    )


def ratio_guard(spectrum: Spectrum) -> float:
    """Smallest usable |v_1(i)|"""
    return RATIO_GUARD_FACTOR * float(np.abs(spectrum.eigenvectors[:, 0]).max())


def ratio_vector(spectrum: Spectrum, i: int, k0: int) -> RatioVector:
    """
    Y_i(k) = v_k(i) / v_1(i) for k = 2..K0.

    Entries whose numerator and denominator are both below the guard are 1.

    Raises:
        NearSingularRatioError: if v_1(i) is below the guard while some
            numerator is not
    """
    if not 1 <= k0 <= spectrum.rank:
        raise PreconditionError(f"K0={k0} outside available rank 1..{spectrum.rank}")
    if not 0 <= i < spectrum.n:
        raise PreconditionError(f"Node {i} outside 0..{spectrum.n - 1}")
    if k0 == 1:
        return RatioVector(i, np.empty(0))

    guard = ratio_guard(spectrum)
    row = spectrum.eigenvectors[i, :k0]
    denom, numer = row[0], row[1:]

    if abs(denom) >= guard:
        return RatioVector(i, numer / denom)

    negligible = np.abs(numer) < guard
    if not negligible.all():
        raise NearSingularRatioError(
            f"|v_1({i})| = {abs(denom):.3g} is below the ratio guard {guard:.3g}",
            context="covariance",
        )
    return RatioVector(i, np.ones(k0 - 1))


def _ratio_gradient(V: np.ndarray, t: np.ndarray, i: int) -> np.ndarray:
    """G_i: n x (K0 - 1) sensitivity of Y_i to row i of W"""
    v1i = V[i, 0]
    return V[:, 1:] / (t[1:] * v1i) - np.outer(V[:, 0], V[i, 1:]) / (t[0] * v1i ** 2)


def sigma_ratio(source: Source, i: int, j: int, k0: int) -> CovarianceEstimate:
    """
    Covariance of Y_i - Y_j (variant T_ratio).

    Population sources use t_k (default d_k) as eigenvalue locations; plug-in
    sources use d_hat_k.

    Returns:
        (K0 - 1) x (K0 - 1) CovarianceEstimate

    Raises:
        PreconditionError: if K0 < 2
        NearSingularRatioError: if v_1(i) or v_1(j) is below the guard
    """
    _check_pair(source, i, j, k0)
    if k0 < 2:
        raise PreconditionError("The ratio statistic needs K0 >= 2")

    _, V = source.eigen(k0)
    t = source.location(k0)
    guard = ratio_guard(source.spectrum)
    for node in (i, j):
        if abs(V[node, 0]) < guard:
            raise NearSingularRatioError(
                f"|v_1({node})| = {abs(V[node, 0]):.3g} is below the ratio guard {guard:.3g}",
                context="covariance",
            )

    G_i = _ratio_gradient(V, t, i)
    G_j = _ratio_gradient(V, t, j)
    s_i = source.variance_row(i).copy()
    s_j = source.variance_row(j).copy()
    s_ij = s_i[j]
    s_i[j] = 0.0
    s_j[i] = 0.0

    c = G_i[j] - G_j[i]
    sigma = (G_i * s_i[:, None]).T @ G_i + (G_j * s_j[:, None]).T @ G_j + s_ij * np.outer(c, c)

    return CovarianceEstimate(
        matrix=_symmetric(sigma),
        provenance=source.provenance,
        pair=(i, j),
        k0=k0,
        variant=Variant.T_RATIO,
    )


def sigma_for(source: Source, i: int, j: int, k0: int, variant: Variant) -> CovarianceEstimate:
    """Dispatch on the statistic variant"""
    if Variant(variant) is Variant.T:
        return sigma_pair(source, i, j, k0)
    return sigma_ratio(source, i, j, k0)
