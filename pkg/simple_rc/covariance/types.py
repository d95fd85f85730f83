"""
Covariance sources and estimates.

A source bundles what the covariance formulas read: eigenpairs, the
eigenvalue locations used in denominators, and a per-node row of edge
variances. The population source reads sigma^2_kl = h_kl (1 - h_kl) from H;
the plug-in source reads the squared residuals w_hat_kl^2.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..enums import Provenance, Variant
from ..errors import PreconditionError
from ..spectral.types import ResidualMatrix, Spectrum


@dataclass(frozen=True)
class PopulationSource:
    """Oracle quantities from the mean matrix"""
    mean: np.ndarray
    spectrum: Spectrum
    self_loops: bool = False
    locations: Optional[np.ndarray] = None

    provenance = Provenance.POPULATION

    def variance_row(self, i: int) -> np.ndarray:
        h = np.asarray(self.mean[i], dtype=np.float64)
        s = h * (1.0 - h)
        if not self.self_loops:
            s = s.copy()
            s[i] = 0.0
        return s

    def eigen(self, k0: int) -> Tuple[np.ndarray, np.ndarray]:
        return self.spectrum.top(k0)

    def location(self, k0: int) -> np.ndarray:
        """t_1..t_K0; defaults to d_1..d_K0"""
        if self.locations is None:
            return self.spectrum.eigenvalues[:k0]
        t = np.asarray(self.locations, dtype=np.float64)
        if t.shape[0] < k0:
            raise PreconditionError(f"Only {t.shape[0]} locations supplied for K0={k0}")
        return t[:k0]


@dataclass(frozen=True)
class PluginSource:
    """Empirical quantities from the observed network"""
    residual: ResidualMatrix
    spectrum: Spectrum
    self_loops: bool = False

    provenance = Provenance.PLUGIN

    def variance_row(self, i: int) -> np.ndarray:
        s = np.square(self.residual.values[i])
        if not self.self_loops:
            s[i] = 0.0
        return s

    def eigen(self, k0: int) -> Tuple[np.ndarray, np.ndarray]:
        return self.spectrum.top(k0)

    def location(self, k0: int) -> np.ndarray:
        return self.spectrum.eigenvalues[:k0]


@dataclass(frozen=True)
class CovarianceEstimate:
    """
    Covariance of the pair contrast.

    K0 x K0 for variant T, (K0 - 1) x (K0 - 1) for T_ratio.
    """
    matrix: np.ndarray
    provenance: Provenance
    pair: Tuple[int, int]
    k0: int
    variant: Variant = Variant.T

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def matches(self, i: int, j: int, k0: int, variant: Variant) -> bool:
        return (
            set(self.pair) == {i, j}
            and self.k0 == k0
            and self.variant is Variant(variant)
        )


@dataclass(frozen=True)
class RatioVector:
    """Y_i(k) = v_k(i) / v_1(i) for k = 2..K0"""
    node: int
    values: np.ndarray

    def __len__(self) -> int:
        return self.values.shape[0]
