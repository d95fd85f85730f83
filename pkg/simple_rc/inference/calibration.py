"""
Null calibration of pair and group statistics.

Pair statistics are chi-square with df = K0 (T) or K0 - 1 (T_ratio).
The group maximum over m/2 coupled pairs satisfies
(T - b_m) / 2 -> Gumbel, with

    b_m = 2 log(m/2) + (K - 2) log log(m/2) - 2 log Gamma(K/2).

Groups with fewer than MIN_GUMBEL_GROUP effective nodes are calibrated by
the exact law of the maximum of m/2 independent chi-square variables.
"""

import math

from ..distributions import (
    chi2_quantile,
    chi2_sf,
    gumbel_quantile,
    gumbel_sf,
    ln_gamma,
)
from ..errors import PreconditionError


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise PreconditionError(f"alpha must lie in (0, 1), got {alpha}")


def gumbel_centering(m: int, k_eff: int) -> float:
    """
    Centering constant b_m for a group of (effective) size m.

    Raises:
        PreconditionError: if m/2 <= 1 or k_eff < 1
    """
    if k_eff < 1:
        raise PreconditionError(f"K_eff must be >= 1, got {k_eff}")
    half = m / 2.0
    if half <= 1.0:
        raise PreconditionError(f"Centering needs m/2 > 1, got m={m}")
    return (
        2.0 * math.log(half)
        + (k_eff - 2) * math.log(math.log(half))
        - 2.0 * ln_gamma(k_eff / 2.0)
    )


def pair_pvalue(statistic: float, df: int) -> float:
    """1 - F_df(statistic)"""
    return chi2_sf(statistic, df)


def group_pvalue(statistic: float, m: int, k_eff: int) -> float:
    """1 - G((statistic - b_m) / 2)"""
    b = gumbel_centering(m, k_eff)
    return gumbel_sf((statistic - b) / 2.0)


def max_chi2_pvalue(statistic: float, pairs: int, df: int) -> float:
    """1 - F_df(statistic)^pairs for the maximum of independent chi-square"""
    if pairs < 1:
        raise PreconditionError(f"Need at least one pair, got {pairs}")
    tail = chi2_sf(statistic, df)
    if tail >= 1.0:
        return 1.0
    return float(min(1.0, max(0.0, -math.expm1(pairs * math.log1p(-tail)))))


def pair_critical_value(alpha: float, df: int) -> float:
    """Chi-square (1 - alpha) quantile"""
    _check_alpha(alpha)
    return chi2_quantile(1.0 - alpha, df)


def group_critical_value(alpha: float, m: int, k_eff: int) -> float:
    """b_m + 2 * Gumbel (1 - alpha) quantile"""
    _check_alpha(alpha)
    return gumbel_centering(m, k_eff) + 2.0 * gumbel_quantile(1.0 - alpha)


def max_chi2_critical_value(alpha: float, pairs: int, df: int) -> float:
    """Chi-square quantile at (1 - alpha)^(1/pairs)"""
    _check_alpha(alpha)
    if pairs < 1:
        raise PreconditionError(f"Need at least one pair, got {pairs}")
    return chi2_quantile((1.0 - alpha) ** (1.0 / pairs), df)
