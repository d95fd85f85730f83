"""
End-to-end pair and group tests on an observed network.

Both drivers run the same chain: spectrum -> K0 -> residual -> plug-in
covariance -> statistic -> calibration -> decision.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

import numpy as np

from ..config import DEFAULT_ALPHA, MIN_GUMBEL_GROUP
from ..covariance import PluginSource, sigma_for
from ..enums import Scope, Variant, degrees_of_freedom
from ..errors import PreconditionError
from ..spectral import (
    AdjacencyMatrix,
    Spectrum,
    eigendecompose,
    estimate_k0,
    max_degree_q,
    residual_matrix,
)
from .calibration import (
    gumbel_centering,
    group_critical_value,
    group_pvalue,
    max_chi2_critical_value,
    max_chi2_pvalue,
    pair_critical_value,
    pair_pvalue,
)
from .coupling import random_coupling, subsample_group
from .statistics import group_statistic_detail, pair_statistic_detail
from .types import TestReport

logger = logging.getLogger("simple_rc.inference")


@dataclass
class _Fit:
    """Spectral quantities shared by the pair and group drivers"""
    adjacency: AdjacencyMatrix
    spectrum: Spectrum
    q_check: float
    k0: int
    k0_rule: str
    source: PluginSource


def _fit(
    X: Union[AdjacencyMatrix, np.ndarray],
    rule: str,
    variant: Variant,
    k0_override: Optional[int],
    loglog_multiplier: Optional[float]
) -> _Fit:
    adjacency = AdjacencyMatrix.from_array(X)
    n = adjacency.n
    spectrum = eigendecompose(adjacency)
    _, q_check = max_degree_q(adjacency)

    if k0_override is not None:
        if not 1 <= k0_override <= n:
            raise PreconditionError(f"K0 override {k0_override} outside 1..{n}")
        k0, k0_rule = int(k0_override), "override"
    else:
        k0, k0_rule = estimate_k0(spectrum, q_check, n, rule, loglog_multiplier), rule

    if Variant(variant) is Variant.T_RATIO and k0 < 2:
        raise PreconditionError(
            f"Variant T_ratio needs K0 >= 2 but the {k0_rule} rule gave K0={k0}; use variant T"
        )

    residual = residual_matrix(adjacency, spectrum, k0)
    source = PluginSource(residual, spectrum, adjacency.self_loops)
    logger.debug(f"Fit n={n}: q_check={q_check:.4g}, K0={k0} ({k0_rule})")
    return _Fit(adjacency, spectrum, q_check, k0, k0_rule, source)


def _check_nodes(nodes: Sequence[int], n: int) -> None:
    bad = [i for i in nodes if not 0 <= i < n]
    if bad:
        raise PreconditionError(f"Nodes {bad} outside 0..{n - 1}")


def estimation_error_bounds(
    spectrum: Spectrum,
    X: Union[AdjacencyMatrix, np.ndarray],
    k0: int
) -> float:
    """
    Data-driven scale of the plug-in covariance error,

        q sqrt(log n) / |d_K0| + ||V_K0||_max sqrt(log n) / sqrt(theta)

    with q_check for q, d_hat_K0 for d_K0 and mean degree / n for theta.
    """
    A = X.values if isinstance(X, AdjacencyMatrix) else np.asarray(X)
    n = A.shape[0]
    if n < 2:
        raise PreconditionError("Error bounds need n >= 2")
    d, V = spectrum.top(k0)
    _, q_check = max_degree_q(A)
    theta_hat = float(A.sum()) / (n * n)
    root_log = np.sqrt(np.log(n))

    if abs(d[-1]) == 0 or theta_hat == 0:
        return float("inf")
    return float(
        q_check * root_log / abs(d[-1])
        + np.abs(V).max() * root_log / np.sqrt(theta_hat)
    )


def run_pair_test(
    X: Union[AdjacencyMatrix, np.ndarray],
    i: int,
    j: int,
    alpha: float = DEFAULT_ALPHA,
    variant: Variant = Variant.T,
    k0_override: Optional[int] = None,
    loglog_multiplier: Optional[float] = None
) -> TestReport:
    """
    Test whether nodes i and j share a membership profile.

    Args:
        X: adjacency matrix
        i, j: distinct 0-based nodes
        alpha: test level
        variant: T (MM) or T_ratio (DCMM)
        k0_override: fixed K0 instead of the pair rule
        loglog_multiplier: replaces log log n in the K0 threshold

    Returns:
        TestReport with chi-square calibration

    Raises:
        PreconditionError: bad nodes, K0 or alpha
        NumericalFailureError: no signal or singular covariance
    """
    variant = Variant(variant)
    if i == j:
        raise PreconditionError("Pair test needs two distinct nodes")
    if not 0.0 < alpha < 1.0:
        raise PreconditionError(f"alpha must lie in (0, 1), got {alpha}")

    n = AdjacencyMatrix.from_array(X).n
    _check_nodes([i, j], n)
    fit = _fit(X, "pair", variant, k0_override, loglog_multiplier)

    sigma = sigma_for(fit.source, i, j, fit.k0, variant)
    statistic, warnings = pair_statistic_detail(fit.spectrum, sigma, i, j, fit.k0, variant)

    df = degrees_of_freedom(variant, fit.k0)
    critical = pair_critical_value(alpha, df)
    report = TestReport(
        variant=variant,
        scope=Scope.PAIR,
        nodes=[int(i), int(j)],
        statistic=statistic,
        pair_statistics=[statistic],
        k0=fit.k0,
        k0_rule=fit.k0_rule,
        m=2,
        df=df,
        calibration="chi2",
        critical_value=critical,
        p_value=pair_pvalue(statistic, df),
        alpha=alpha,
        reject=statistic >= critical,
        q_check=fit.q_check,
        error_bound=estimation_error_bounds(fit.spectrum, fit.adjacency, fit.k0),
        warnings=warnings,
        config={
            "n": fit.adjacency.n,
            "self_loops": fit.adjacency.self_loops,
            "k0_override": k0_override,
            "loglog_multiplier": loglog_multiplier,
        },
    )
    logger.info(
        f"Pair test ({i}, {j}) {variant.value}: stat={statistic:.4f}, "
        f"p={report.p_value:.4g}, reject={report.reject}"
    )
    return report


def run_group_test(
    X: Union[AdjacencyMatrix, np.ndarray],
    group: Sequence[int],
    alpha: float = DEFAULT_ALPHA,
    variant: Variant = Variant.T,
    seed: int = 0,
    k0_override: Optional[int] = None,
    subsample: Optional[int] = None,
    loglog_multiplier: Optional[float] = None
) -> TestReport:
    """
    Test whether every node of the group shares one membership profile.

    The group is randomly coupled into disjoint pairs; the statistic is the
    maximum pair statistic, calibrated by the centered Gumbel limit, or by
    the exact max-of-chi-square law when fewer than six nodes are coupled.

    Args:
        X: adjacency matrix
        group: 0-based node indices
        alpha: test level
        variant: T (MM) or T_ratio (DCMM)
        seed: coupling seed
        k0_override: fixed K0 instead of the group rule
        subsample: test a random subgroup of this size instead (experimental)
        loglog_multiplier: replaces log log n in the K0 threshold

    Returns:
        TestReport carrying the coupling plan
    """
    variant = Variant(variant)
    if not 0.0 < alpha < 1.0:
        raise PreconditionError(f"alpha must lie in (0, 1), got {alpha}")

    nodes = [int(v) for v in group]
    n = AdjacencyMatrix.from_array(X).n
    _check_nodes(nodes, n)

    warnings: List[str] = []
    if subsample is not None:
        nodes = subsample_group(nodes, subsample, seed)
        warnings.append(f"Tested a random subsample of {subsample} nodes")
    plan = random_coupling(nodes, seed)
    if plan.dropped_node is not None:
        warnings.append(f"Odd group: node {plan.dropped_node} left out of the coupling")

    fit = _fit(X, "group", variant, k0_override, loglog_multiplier)
    covariances = [sigma_for(fit.source, a, b, fit.k0, variant) for a, b in plan.pairs]
    statistic, values, notes = group_statistic_detail(
        fit.spectrum, covariances, plan, fit.k0, variant
    )
    warnings.extend(notes)

    df = degrees_of_freedom(variant, fit.k0)
    m_eff = plan.effective_size
    b_m = None
    if m_eff >= MIN_GUMBEL_GROUP:
        calibration = "gumbel"
        b_m = gumbel_centering(m_eff, df)
        p_value = group_pvalue(statistic, m_eff, df)
        critical = group_critical_value(alpha, m_eff, df)
    else:
        calibration = "max-chi2"
        p_value = max_chi2_pvalue(statistic, len(plan.pairs), df)
        critical = max_chi2_critical_value(alpha, len(plan.pairs), df)
        message = f"Effective group size {m_eff} < {MIN_GUMBEL_GROUP}: max-chi-square calibration"
        logger.warning(message)
        warnings.append(message)

    report = TestReport(
        variant=variant,
        scope=Scope.GROUP,
        nodes=sorted(nodes),
        statistic=statistic,
        pair_statistics=values,
        k0=fit.k0,
        k0_rule=fit.k0_rule,
        m=m_eff,
        df=df,
        calibration=calibration,
        b_m=b_m,
        critical_value=critical,
        p_value=p_value,
        alpha=alpha,
        reject=statistic >= critical,
        q_check=fit.q_check,
        error_bound=estimation_error_bounds(fit.spectrum, fit.adjacency, fit.k0),
        coupling=plan,
        warnings=warnings,
        config={
            "n": fit.adjacency.n,
            "self_loops": fit.adjacency.self_loops,
            "seed": int(seed),
            "k0_override": k0_override,
            "subsample": subsample,
            "loglog_multiplier": loglog_multiplier,
        },
    )
    logger.info(
        f"Group test m={len(nodes)} {variant.value}: stat={statistic:.4f}, "
        f"p={p_value:.4g}, reject={report.reject}"
    )
    return report
