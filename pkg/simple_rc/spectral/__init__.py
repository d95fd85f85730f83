"""
Spectral module

Eigendecomposition of observed networks, K0 selection and residuals.
"""

from .types import AdjacencyMatrix, Spectrum, ResidualMatrix
from .eigen import (
    eigendecompose,
    ordered_eigh,
    magnitude_order,
    fix_signs,
    max_degree_q,
    k0_threshold,
    estimate_k0,
    residual_matrix,
    spectrum_to_frame,
    spectrum_to_csv,
)

__all__ = [
    # Types
    "AdjacencyMatrix",
    "Spectrum",
    "ResidualMatrix",

    # Operations
    "eigendecompose",
    "ordered_eigh",
    "magnitude_order",
    "fix_signs",
    "max_degree_q",
    "k0_threshold",
    "estimate_k0",
    "residual_matrix",
    "spectrum_to_frame",
    "spectrum_to_csv",
]
