"""
Scalar special functions for test calibration.

Chi-square functions are the regularized incomplete gamma functions
P(k/2, x/2) and Q(k/2, x/2); the Gumbel law is G(x) = exp(-exp(-x)).
"""

import math

import numpy as np
from scipy import special

from ..errors import PreconditionError


def _check_df(k) -> float:
    if not np.isfinite(k) or k < 1:
        raise PreconditionError(f"Degrees of freedom must be >= 1, got {k}")
    return float(k)


def ln_gamma(x: float) -> float:
    """
    log Gamma(x) for x > 0.

    Raises:
        PreconditionError: if x <= 0
    """
    if not x > 0:
        raise PreconditionError(f"ln_gamma requires x > 0, got {x}")
    return float(special.gammaln(x))


def chi2_cdf(x: float, k: float) -> float:
    """P(chi^2_k <= x); 0 for x <= 0"""
    k = _check_df(k)
    if np.isnan(x):
        raise PreconditionError("chi2_cdf argument is NaN")
    if x <= 0:
        return 0.0
    return float(special.gammainc(k / 2.0, x / 2.0))


def chi2_sf(x: float, k: float) -> float:
    """P(chi^2_k > x), computed directly to keep tail precision"""
    k = _check_df(k)
    if np.isnan(x):
        raise PreconditionError("chi2_sf argument is NaN")
    if x <= 0:
        return 1.0
    return float(special.gammaincc(k / 2.0, x / 2.0))


def chi2_quantile(p: float, k: float) -> float:
    """
    Inverse of chi2_cdf.

    Raises:
        PreconditionError: unless 0 <= p < 1
    """
    k = _check_df(k)
    if not 0.0 <= p < 1.0:
        raise PreconditionError(f"chi2_quantile requires p in [0, 1), got {p}")
    if p == 0.0:
        return 0.0
    return float(2.0 * special.gammaincinv(k / 2.0, p))


def gumbel_cdf(x: float) -> float:
    """exp(-exp(-x))"""
    return math.exp(-math.exp(-x)) if x > -700 else 0.0


def gumbel_sf(x: float) -> float:
    """1 - G(x) without cancellation for large x"""
    if x <= -700:
        return 1.0
    return float(-math.expm1(-math.exp(-x)))


def gumbel_quantile(p: float) -> float:
    """
    -log(-log p).

    Raises:
        PreconditionError: unless 0 < p < 1
    """
    if not 0.0 < p < 1.0:
        raise PreconditionError(f"gumbel_quantile requires p in (0, 1), got {p}")
    return -math.log(-math.log(p))
