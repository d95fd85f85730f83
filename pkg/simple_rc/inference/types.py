"""
Inference records: coupling plans and test reports.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

from .._version import __version__
from ..enums import Scope, Variant


@dataclass(frozen=True)
class CouplingPlan:
    """
    Disjoint node pairs covering the tested group.

    For odd groups one node is left out and recorded in dropped_node.
    """
    pairs: Tuple[Tuple[int, int], ...]
    seed: int
    dropped_node: Optional[int] = None

    @property
    def nodes(self) -> List[int]:
        covered = [node for pair in self.pairs for node in pair]
        if self.dropped_node is not None:
            covered.append(self.dropped_node)
        return covered

    @property
    def effective_size(self) -> int:
        """2 * number of pairs"""
        return 2 * len(self.pairs)

    def shifted(self, offset: int) -> "CouplingPlan":
        """Same plan with every node index moved by offset"""
        return CouplingPlan(
            pairs=tuple((a + offset, b + offset) for a, b in self.pairs),
            seed=self.seed,
            dropped_node=None if self.dropped_node is None else self.dropped_node + offset,
        )


class TestReport(BaseModel):
    """
    Outcome of a pair or group test.

    reject is decided as statistic >= critical_value; p_value is reported
    alongside and agrees with it up to rounding at the boundary.
    """
    __test__ = False

    version: str = Field(default=__version__)
    variant: Variant
    scope: Scope
    nodes: List[int] = Field(description="Tested nodes")
    index_base: int = Field(default=0, ge=0, le=1)
    statistic: float = Field(ge=0.0)
    pair_statistics: List[float] = Field(default_factory=list)
    k0: int = Field(ge=1)
    k0_rule: str = Field(description="pair, group or override")
    m: int = Field(ge=2, description="Effective group size")
    df: int = Field(ge=1)
    calibration: str = Field(description="chi2, gumbel or max-chi2")
    b_m: Optional[float] = None
    critical_value: float
    p_value: float = Field(ge=0.0, le=1.0)
    alpha: float = Field(gt=0.0, lt=1.0)
    reject: bool
    q_check: float = Field(ge=0.0)
    error_bound: Optional[float] = Field(
        default=None,
        description="Plug-in covariance error scale from the data"
    )
    coupling: Optional[CouplingPlan] = None
    warnings: List[str] = Field(default_factory=list)
    config: Dict[str, Any] = Field(default_factory=dict)

    def one_based(self) -> "TestReport":
        """Copy with node indices shifted to 1-based"""
        if self.index_base == 1:
            return self
        return self.model_copy(update={
            "nodes": [i + 1 for i in self.nodes],
            "coupling": None if self.coupling is None else self.coupling.shifted(1),
            "index_base": 1,
        })
