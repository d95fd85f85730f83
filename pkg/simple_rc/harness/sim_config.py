"""
Simulation configurations and YAML sweep files.
"""

import itertools
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..config import DEFAULT_ALPHA, DEFAULT_REPS
from ..enums import Scope, Variant
from ..errors import ConfigurationError
from ..model_core import build_preset

logger = logging.getLogger("simple_rc.harness")

# full-scale layout; desk-scale runs shrink n0 with n
FULL_N = 3000
FULL_N0 = 300


class SimConfig(BaseModel):
    """One Monte Carlo cell: model, test and replication settings"""
    model_config = ConfigDict(extra="forbid")

    example: int = Field(ge=1, le=4)
    n: int = Field(default=FULL_N, ge=10)
    K: int = Field(default=5, ge=3)
    n0: int = Field(default=FULL_N0, ge=1, description="Pure nodes per community")
    theta: float = Field(default=0.5, gt=0.0, le=1.0, description="theta (MM) or r^2 (DCMM)")
    rho: float = Field(default=0.2, ge=0.0, le=1.0)
    delta: Optional[float] = Field(default=None, ge=0.0, le=0.6)
    m: int = Field(default=10, ge=2, description="Tested group size")
    k0: Optional[int] = Field(default=None, ge=1, description="Fixed K0; None for the data-driven rule")
    variant: Variant = Variant.T
    scope: Scope = Scope.GROUP
    alpha: float = Field(default=DEFAULT_ALPHA, gt=0.0, lt=1.0)
    reps: int = Field(default=DEFAULT_REPS, ge=1)
    seed: int = Field(default=0, ge=0, description="Master seed")
    loglog_multiplier: Optional[float] = Field(default=None, gt=0.0)
    subsample: Optional[int] = Field(default=None, ge=2)

    @model_validator(mode="before")
    @classmethod
    def _default_variant(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("variant") is None and "example" in data:
            data = dict(data)
            data["variant"] = Variant.T if int(data["example"]) in (1, 3) else Variant.T_RATIO
        return data

    @model_validator(mode="after")
    def _check_consistency(self) -> "SimConfig":
        expected = Variant.T if self.example in (1, 3) else Variant.T_RATIO
        if self.variant is not expected:
            raise ValueError(
                f"example {self.example} uses variant {expected.value}, got {self.variant.value}"
            )
        if self.delta is not None and self.example in (1, 2):
            raise ValueError("delta only applies to examples 3 and 4")
        if self.K * self.n0 >= self.n:
            raise ValueError(f"K * n0 = {self.K * self.n0} leaves no mixed nodes (n={self.n})")
        if self.k0 is not None and self.variant is Variant.T_RATIO and self.k0 < 2:
            raise ValueError("variant T_ratio needs k0 >= 2")
        return self

    @property
    def label(self) -> str:
        parts = [f"ex{self.example}", f"n{self.n}", f"m{self.m}", f"theta{self.theta:g}"]
        if self.delta is not None:
            parts.append(f"delta{self.delta:g}")
        parts.append(f"k0{self.k0 if self.k0 is not None else 'auto'}")
        return "_".join(parts)

    def build_model(self):
        """(NetworkModel, tested group) for this cell"""
        return build_preset(
            self.example,
            n=self.n,
            K=self.K,
            n0=self.n0,
            signal=self.theta,
            rho=self.rho,
            delta=self.delta,
            m=self.m,
            seed=self.seed,
        )


def build_sim_config(example: int, **overrides) -> SimConfig:
    """
    Fully populated configuration for one of the four examples.

    Overriding n without n0 scales n0 proportionally (n0 = n / 10).

    Raises:
        ConfigurationError: on illegal overrides
    """
    values: Dict[str, Any] = {"example": example}
    values.update({k: v for k, v in overrides.items() if v is not None})
    if "n" in values and "n0" not in values:
        values["n0"] = max(1, round(FULL_N0 * values["n"] / FULL_N))
    try:
        return SimConfig(**values)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid simulation config: {e}", context="harness")


def load_sweep(path) -> List[SimConfig]:
    """
    Expand a YAML sweep file into configurations.

    The file has a `base` mapping of fixed fields and a `grid` mapping of
    field -> list; the cartesian product of the grid is taken in file order.
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            document = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        raise ConfigurationError(f"Cannot read sweep {path}: {e}", context="harness")

    base = dict(document.get("base") or {})
    grid = document.get("grid") or {}
    if "example" not in base:
        raise ConfigurationError(f"Sweep {path} has no base.example", context="harness")
    for key, values in grid.items():
        if not isinstance(values, list) or not values:
            raise ConfigurationError(f"Sweep grid entry '{key}' must be a nonempty list")

    keys = list(grid)
    configs = []
    for combo in itertools.product(*(grid[k] for k in keys)):
        fields = dict(base)
        fields.update(zip(keys, combo))
        example = fields.pop("example")
        configs.append(build_sim_config(example, **fields))

    name = (document.get("sweep") or {}).get("name", path.stem)
    logger.info(f"Loaded sweep '{name}': {len(configs)} configurations")
    return configs
