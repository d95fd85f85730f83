"""
Distributions

Log-gamma, chi-square and Gumbel functions used for calibration.
"""

from .functions import (
    ln_gamma,
    chi2_cdf,
    chi2_sf,
    chi2_quantile,
    gumbel_cdf,
    gumbel_sf,
    gumbel_quantile,
)

__all__ = [
    "ln_gamma",
    "chi2_cdf",
    "chi2_sf",
    "chi2_quantile",
    "gumbel_cdf",
    "gumbel_sf",
    "gumbel_quantile",
]
