"""
JSON model documents.

A ModelConfig either names a preset (example1..example4) with its
parameters, or spells the model out: membership rows, theta or a degree
vector, and rho or a full kernel.
"""

import json
import logging
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..config import DEFAULT_SELF_LOOPS, H_BOUND_EPSILON
from ..errors import ConfigurationError
from ..utils.file_io import save_json
from .models import NetworkModel
from .presets import PRESET_NAMES, build_preset, community_kernel

logger = logging.getLogger("simple_rc.model_core")


class ModelConfig(BaseModel):
    """Serializable description of a NetworkModel"""
    model_config = ConfigDict(extra="forbid")

    n: int = Field(ge=2, description="Number of nodes")
    K: int = Field(ge=1, description="Number of communities")
    theta: Optional[float] = Field(default=None, gt=0.0, description="MM sparsity")
    degrees: Optional[List[float]] = Field(default=None, description="DCMM degree vector")
    rho: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    kernel: Optional[List[List[float]]] = Field(default=None, description="Full K x K matrix P")
    membership: Optional[List[List[float]]] = Field(default=None, description="n x K rows of Pi")
    preset: Optional[str] = Field(default=None, description="example1 .. example4")
    n0: Optional[int] = Field(default=None, ge=1, description="Pure nodes per community (presets)")
    delta: Optional[float] = Field(default=None, ge=0.0, le=0.6)
    m: int = Field(default=10, ge=2, description="Representative group size (presets)")
    seed: int = Field(default=0, ge=0, description="Seed for preset degree draws")
    self_loops: bool = DEFAULT_SELF_LOOPS
    epsilon: float = Field(default=H_BOUND_EPSILON, gt=0.0, lt=1.0)

    @model_validator(mode="after")
    def _check_fields(self) -> "ModelConfig":
        if self.preset is not None:
            if self.preset not in PRESET_NAMES:
                raise ValueError(f"Unknown preset '{self.preset}'")
            if self.membership is not None or self.kernel is not None:
                raise ValueError("Presets build their own membership and kernel")
            return self
        if (self.theta is None) == (self.degrees is None):
            raise ValueError("Specify exactly one of theta or degrees")
        if (self.rho is None) == (self.kernel is None):
            raise ValueError("Specify exactly one of rho or kernel")
        if self.membership is None:
            raise ValueError("Explicit models need a membership matrix")
        return self

    def build(self) -> Tuple[NetworkModel, Optional[List[int]]]:
        """
        Materialize the model.

        Returns:
            (NetworkModel, representative group or None for explicit models)
        """
        if self.preset is not None:
            example = int(self.preset[-1])
            signal = self.theta
            if signal is None:
                raise ConfigurationError("Preset configs need theta (r^2 for examples 2 and 4)")
            n0 = self.n0 if self.n0 is not None else max(1, self.n // 10)
            return build_preset(
                example,
                n=self.n,
                K=self.K,
                n0=n0,
                signal=signal,
                rho=self.rho if self.rho is not None else 0.2,
                delta=self.delta,
                m=self.m,
                seed=self.seed,
                self_loops=self.self_loops,
            )

        Pi = np.asarray(self.membership, dtype=np.float64)
        if Pi.shape != (self.n, self.K):
            raise ConfigurationError(f"membership shape {Pi.shape} != ({self.n}, {self.K})")
        P = (
            np.asarray(self.kernel, dtype=np.float64)
            if self.kernel is not None
            else community_kernel(self.K, self.rho)
        )
        model = NetworkModel(
            Pi,
            P,
            theta=self.theta,
            degrees=self.degrees,
            self_loops=self.self_loops,
            epsilon=self.epsilon,
        )
        return model, None


def load_model_config(path) -> ModelConfig:
    """
    Load a model document from JSON.

    Raises:
        ConfigurationError: on unreadable JSON or invalid fields
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
        config = ModelConfig.model_validate(data)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigurationError(f"Cannot read model config {path}: {e}", context="model_core")
    except ValidationError as e:
        raise ConfigurationError(f"Invalid model config {path}: {e}", context="model_core")
    logger.debug(f"Loaded model config from {path}")
    return config


def save_model_config(config: ModelConfig, path) -> Path:
    """Write a model document as JSON (unset optional fields omitted)"""
    return Path(save_json(config.model_dump(mode="json", exclude_none=True), path))
