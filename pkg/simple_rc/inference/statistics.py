"""
Pair and group test statistics.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..covariance import CovarianceEstimate, invert_covariance, ratio_vector
from ..enums import Variant
from ..errors import PreconditionError
from ..spectral.types import Spectrum
from .types import CouplingPlan


def pair_contrast(spectrum: Spectrum, i: int, j: int, k0: int, variant: Variant) -> np.ndarray:
    """V_K0(i) - V_K0(j) for T, Y_i - Y_j for T_ratio"""
    if Variant(variant) is Variant.T:
        _, V = spectrum.top(k0)
        return V[i] - V[j]
    return ratio_vector(spectrum, i, k0).values - ratio_vector(spectrum, j, k0).values


def pair_statistic_detail(
    spectrum: Spectrum,
    sigma: Optional[CovarianceEstimate],
    i: int,
    j: int,
    k0: int,
    variant: Variant = Variant.T
) -> Tuple[float, List[str]]:
    """
    Quadratic form x^T Sigma^{-1} x with the inversion warnings.

    Raises:
        PreconditionError: if sigma was built for another pair, K0 or variant
        SingularCovarianceError: if sigma cannot be inverted
    """
    if i == j:
        return 0.0, []
    if sigma is None or not sigma.matches(i, j, k0, variant):
        raise PreconditionError(
            f"Covariance does not match pair ({i}, {j}), K0={k0}, variant {Variant(variant).value}"
        )

    x = pair_contrast(spectrum, i, j, k0, variant)
    inverse, warnings = invert_covariance(sigma)
    value = float(x @ inverse @ x)
    return max(value, 0.0), warnings


def pair_statistic(
    spectrum: Spectrum,
    sigma: Optional[CovarianceEstimate],
    i: int,
    j: int,
    k0: int,
    variant: Variant = Variant.T
) -> float:
    """
    Pairwise statistic, always >= 0.

    Args:
        spectrum: empirical spectrum
        sigma: covariance of the pair contrast (ignored when i == j)
        i, j: 0-based nodes
        k0: number of leading eigenpairs
        variant: T or T_ratio

    Returns:
        statistic value
    """
    value, _ = pair_statistic_detail(spectrum, sigma, i, j, k0, variant)
    return value


def group_statistic_detail(
    spectrum: Spectrum,
    covariances: Sequence[CovarianceEstimate],
    plan: CouplingPlan,
    k0: int,
    variant: Variant = Variant.T
) -> Tuple[float, List[float], List[str]]:
    """Maximum pair statistic, the per-pair values and inversion warnings"""
    if not plan.pairs:
        raise PreconditionError("Coupling plan has no pairs")
    if len(covariances) != len(plan.pairs):
        raise PreconditionError(
            f"{len(covariances)} covariances for {len(plan.pairs)} coupled pairs"
        )

    values, warnings = [], []
    for (i, j), sigma in zip(plan.pairs, covariances):
        value, notes = pair_statistic_detail(spectrum, sigma, i, j, k0, variant)
        values.append(value)
        warnings.extend(notes)
    return max(values), values, warnings


def group_statistic(
    spectrum: Spectrum,
    covariances: Sequence[CovarianceEstimate],
    plan: CouplingPlan,
    k0: int,
    variant: Variant = Variant.T
) -> float:
    """Maximum of the pair statistics over the coupled pairs"""
    value, _, _ = group_statistic_detail(spectrum, covariances, plan, k0, variant)
    return value
