"""
Empirical check of the first-order eigenvector expansion

    v_hat_k ~ v_k + W v_k / d_hat_k

and of the eigenvalue gaps |d_hat_k - d_k|, on the unrescaled scale.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from ..config import SPIKE_FACTOR
from ..errors import PreconditionError
from ..model_core import NetworkModel, mean_matrix, population_spectrum, sample_adjacency
from ..spectral import Spectrum, eigendecompose
from .locations import rescaled_population, t_k_solve

logger = logging.getLogger("simple_rc.rmt_checks")


@dataclass
class ExpansionDiagnostics:
    """
    Per-seed expansion diagnostics.

    residuals[s, k] is max_i |r_k(i)| for seed s; eigen_gaps[s, k] is
    |d_hat_k - d_k|; location_gaps[s, k] is |d_hat_k - t_k| when computed.
    """
    n: int
    theta: float
    K: int
    k0: int
    seeds: List[int]
    residuals: np.ndarray
    eigen_gaps: np.ndarray
    location_gaps: Optional[np.ndarray] = None
    spiked: bool = True
    warnings: List[str] = field(default_factory=list)

    def median_residual(self) -> float:
        """Median over seeds of the worst entry over k and i"""
        return float(np.median(self.residuals.max(axis=1)))

    def median_eigen_gaps(self) -> np.ndarray:
        return np.median(self.eigen_gaps, axis=0)

    def to_rows(self) -> List[Dict]:
        """Long-format rows (n, theta, k, metric, value) of per-k medians"""
        rows = []
        metrics = [("eigvec_residual", self.residuals), ("eigval_gap", self.eigen_gaps)]
        if self.location_gaps is not None:
            metrics.append(("location_gap", self.location_gaps))
        for name, values in metrics:
            medians = np.median(values, axis=0)
            for k, value in enumerate(medians, start=1):
                rows.append({
                    "n": self.n, "theta": self.theta, "k": k,
                    "metric": name, "value": float(value),
                })
        return rows


def expansion_residual_sample(
    X: np.ndarray,
    H: np.ndarray,
    k0: int,
    population: Optional[Spectrum] = None,
    observed: Optional[Spectrum] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Expansion residuals for one observed matrix.

    Args:
        X: observed symmetric matrix (binary, or H itself)
        H: mean matrix
        k0: number of leading eigenpairs checked
        population: precomputed population_spectrum(H, k0)
        observed: precomputed eigendecompose(X)

    Returns:
        (max_i |r_k(i)| per k, |d_hat_k - d_k| per k)
    """
    X = np.asarray(getattr(X, "values", X), dtype=np.float64)
    H = np.asarray(H, dtype=np.float64)
    if X.shape != H.shape:
        raise PreconditionError(f"Shapes differ: X {X.shape}, H {H.shape}")

    if population is None:
        population = population_spectrum(H, k0)
    if observed is None:
        observed = eigendecompose(X)
    d_hat, V_hat = observed.top(k0)
    d, V = population.top(k0)
    W = X - H

    residuals = np.empty(k0)
    for k in range(k0):
        sign = 1.0 if V_hat[:, k] @ V[:, k] >= 0 else -1.0
        r = sign * V_hat[:, k] - V[:, k] - (W @ V[:, k]) / d_hat[k]
        residuals[k] = np.abs(r).max()
    return residuals, np.abs(d_hat - d)


def spiked_regime(model: NetworkModel, k0: int) -> Tuple[bool, float, float]:
    """
    |d_K0| >= SPIKE_FACTOR * sqrt(n theta log n).

    Returns:
        (spiked, |d_K0|, noise scale)
    """
    H = mean_matrix(model).values
    d = population_spectrum(H, k0).eigenvalues
    scale = SPIKE_FACTOR * np.sqrt(model.n * model.sparsity() * np.log(model.n))
    return bool(abs(d[-1]) >= scale), float(abs(d[-1])), float(scale)


def eigen_expansion_residuals(
    model: NetworkModel,
    seeds: Iterable[int],
    k0: int,
    with_locations: bool = False
) -> ExpansionDiagnostics:
    """
    Expansion residuals of the leading K0 eigenpairs over seeded samples.

    A configuration outside the spiked regime is flagged in the warnings,
    not rejected.

    Args:
        model: validated NetworkModel
        seeds: sampling seeds
        k0: eigenpairs checked (<= K)
        with_locations: also report |d_hat_k - t_k| (solves t_k once)
    """
    if not 1 <= k0 <= model.K:
        raise PreconditionError(f"K0={k0} outside 1..{model.K}")
    seeds = [int(s) for s in seeds]
    if not seeds:
        raise PreconditionError("Need at least one seed")

    H = mean_matrix(model)
    population = population_spectrum(H.values, k0)
    spiked, d_last, scale = spiked_regime(model, k0)
    warnings = []
    if not spiked:
        message = (
            f"Not in the spiked regime: |d_{k0}| = {d_last:.4g} < "
            f"sqrt(n theta log n) = {scale:.4g}"
        )
        logger.warning(message)
        warnings.append(message)

    locations = None
    if with_locations:
        d_r, V_r, S, q = rescaled_population(model)
        locations = np.array([q * t_k_solve(d_r, V_r, S, k) for k in range(1, k0 + 1)])

    residuals = np.empty((len(seeds), k0))
    gaps = np.empty((len(seeds), k0))
    location_gaps = np.empty((len(seeds), k0)) if locations is not None else None
    for row, seed in enumerate(seeds):
        X = sample_adjacency(model, seed, mean=H)
        observed = eigendecompose(X)
        residuals[row], gaps[row] = expansion_residual_sample(
            X.values, H.values, k0, population=population, observed=observed
        )
        if locations is not None:
            d_hat = observed.top(k0)[0]
            location_gaps[row] = np.abs(d_hat - locations)

    diagnostics = ExpansionDiagnostics(
        n=model.n,
        theta=model.sparsity(),
        K=model.K,
        k0=k0,
        seeds=seeds,
        residuals=residuals,
        eigen_gaps=gaps,
        location_gaps=location_gaps,
        spiked=spiked,
        warnings=warnings,
    )
    logger.info(
        f"Expansion check n={model.n}, theta={model.sparsity():.3g}: "
        f"median residual {diagnostics.median_residual():.4g}"
    )
    return diagnostics
