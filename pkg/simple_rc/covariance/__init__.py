"""
Covariance module

Population-oracle and plug-in covariances for both statistic variants,
eigenvector ratio vectors, and covariance inversion.
"""

from .types import PopulationSource, PluginSource, CovarianceEstimate, RatioVector
from .estimators import (
    sigma_pair,
    sigma_ratio,
    sigma_for,
    ratio_vector,
    ratio_guard,
)
from .inversion import invert_covariance

__all__ = [
    # Types
    "PopulationSource",
    "PluginSource",
    "CovarianceEstimate",
    "RatioVector",

    # Operations
    "sigma_pair",
    "sigma_ratio",
    "sigma_for",
    "ratio_vector",
    "ratio_guard",
    "invert_covariance",
]
