"""
RMT checks

Desk-scale numerical checks of the random-matrix approximations behind the
tests: QVE limits, spiked eigenvalue locations, eigenvector expansions,
entrywise local-law gaps and the tail-energy diagnostic.
"""

from .qve import QveSolution, qve_solve, qve_residual, support_edge
from .locations import (
    rescaled_variance,
    rescaled_population,
    eigengap_epsilon,
    master_function,
    t_k_solve,
    tail_energy,
)
from .expansion import (
    ExpansionDiagnostics,
    expansion_residual_sample,
    spiked_regime,
    eigen_expansion_residuals,
)
from .local_law import LocalLawDiagnostics, entrywise_law_gap
from .sweep import SWEEP_COLUMNS, sweep_to_frame, rmt_sweep

__all__ = [
    # Types
    "QveSolution",
    "ExpansionDiagnostics",
    "LocalLawDiagnostics",

    # QVE
    "qve_solve",
    "qve_residual",
    "support_edge",

    # Locations
    "rescaled_variance",
    "rescaled_population",
    "eigengap_epsilon",
    "master_function",
    "t_k_solve",
    "tail_energy",

    # Expansions and local laws
    "expansion_residual_sample",
    "spiked_regime",
    "eigen_expansion_residuals",
    "entrywise_law_gap",

    # Sweeps
    "SWEEP_COLUMNS",
    "sweep_to_frame",
    "rmt_sweep",
]
