"""
Model core

Generative MM / DCMM models, mean matrices, Bernoulli sampling and
population oracles.
"""

from .models import NetworkModel, MeanMatrix, ValidationReport, HypothesisSpec
from .generators import (
    validate_model,
    renormalize_membership,
    mean_matrix,
    sample_adjacency,
)
from .population import population_spectrum, null_closeness, alt_separation
from .presets import PRESET_NAMES, build_preset, community_kernel, mixed_profiles
from .model_config import ModelConfig, load_model_config, save_model_config

__all__ = [
    # Types
    "NetworkModel",
    "MeanMatrix",
    "ValidationReport",
    "HypothesisSpec",
    "ModelConfig",

    # Operations
    "validate_model",
    "renormalize_membership",
    "mean_matrix",
    "sample_adjacency",
    "population_spectrum",
    "null_closeness",
    "alt_separation",

    # Presets
    "PRESET_NAMES",
    "build_preset",
    "community_kernel",
    "mixed_profiles",

    # I/O
    "load_model_config",
    "save_model_config",
]
