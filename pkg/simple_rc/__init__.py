"""
SIMPLE-RC: spectral tests of whether network nodes share membership profiles

Sub-packages:
- model_core: mixed membership / degree-corrected models and samplers
- spectral: eigendecomposition, K0 selection and residual matrices
- covariance: population and plug-in covariance estimates
- inference: pair and group tests with chi-square / Gumbel calibration
- distributions: chi-square and Gumbel special functions
- rmt_checks: numerical random matrix diagnostics
- harness: Monte Carlo size and power studies
- ingest: adjacency file formats and correlation networks
"""

from ._version import __version__
from .enums import AdjacencyFormat, Provenance, Scope, Variant
from .errors import (
    SimpleRCError,
    PreconditionError,
    ConfigurationError,
    ContractViolationError,
    NumericalFailureError,
    NoSignalError,
    SingularCovarianceError,
    NearSingularRatioError,
    ConvergenceError,
    RankDeficiencyError,
)
from .model_core import NetworkModel, build_preset, sample_adjacency, validate_model
from .spectral import AdjacencyMatrix, Spectrum, eigendecompose, estimate_k0
from .inference import TestReport, run_group_test, run_pair_test
from .ingest import correlation_network, load_adjacency, save_adjacency
from .harness import SimConfig, build_sim_config, monte_carlo

__all__ = [
    "__version__",

    # Enums
    "AdjacencyFormat",
    "Provenance",
    "Scope",
    "Variant",

    # Errors
    "SimpleRCError",
    "PreconditionError",
    "ConfigurationError",
    "ContractViolationError",
    "NumericalFailureError",
    "NoSignalError",
    "SingularCovarianceError",
    "NearSingularRatioError",
    "ConvergenceError",
    "RankDeficiencyError",

    # Models
    "NetworkModel",
    "build_preset",
    "sample_adjacency",
    "validate_model",

    # Spectral
    "AdjacencyMatrix",
    "Spectrum",
    "eigendecompose",
    "estimate_k0",

    # Tests
    "TestReport",
    "run_pair_test",
    "run_group_test",

    # Ingest
    "load_adjacency",
    "save_adjacency",
    "correlation_network",

    # Harness
    "SimConfig",
    "build_sim_config",
    "monte_carlo",
]
