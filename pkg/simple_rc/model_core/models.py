"""
Model types for MM / DCMM / SBM networks.

NetworkModel is the generative triple (Pi, degrees, P). The MM case stores a
scalar theta (Theta^2 = theta I); the DCMM case stores the vector of
per-node degree parameters.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ..config import DEFAULT_SELF_LOOPS, H_BOUND_EPSILON
from ..errors import PreconditionError


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.float64, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class NetworkModel:
    """
    Generative network model.

    Exactly one of theta (MM) or degrees (DCMM) is set.
    """
    membership: np.ndarray
    kernel: np.ndarray
    theta: Optional[float] = None
    degrees: Optional[np.ndarray] = None
    self_loops: bool = DEFAULT_SELF_LOOPS
    epsilon: float = H_BOUND_EPSILON
    name: str = "custom"

    def __post_init__(self):
        if (self.theta is None) == (self.degrees is None):
            raise PreconditionError("Specify exactly one of theta (MM) or degrees (DCMM)")
        object.__setattr__(self, "membership", _frozen(np.atleast_2d(self.membership)))
        object.__setattr__(self, "kernel", _frozen(np.atleast_2d(self.kernel)))
        if self.degrees is not None:
            object.__setattr__(self, "degrees", _frozen(np.ravel(self.degrees)))

    @property
    def n(self) -> int:
        return self.membership.shape[0]

    @property
    def K(self) -> int:
        return self.membership.shape[1]

    @property
    def is_dcmm(self) -> bool:
        return self.degrees is not None

    def degree_vector(self) -> np.ndarray:
        """Diagonal of Theta (sqrt(theta) for every node in the MM case)"""
        if self.degrees is not None:
            return self.degrees
        return np.full(self.n, np.sqrt(self.theta))

    def sparsity(self) -> float:
        """theta, or its DCMM analogue (1/n) sum_i vartheta_i^2"""
        if self.degrees is None:
            return float(self.theta)
        return float(np.mean(self.degrees ** 2))

    def dimension_problems(self) -> List[str]:
        problems = []
        if self.kernel.shape != (self.K, self.K):
            problems.append(
                f"dimensions: kernel shape {self.kernel.shape} does not match K={self.K}"
            )
        if self.degrees is not None and self.degrees.shape[0] != self.n:
            problems.append(
                f"dimensions: {self.degrees.shape[0]} degrees for n={self.n} nodes"
            )
        return problems


@dataclass(frozen=True)
class MeanMatrix:
    """Deterministic mean matrix H of the adjacency matrix"""
    values: np.ndarray
    rank_k: bool = True

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass
class ValidationReport:
    """Model-condition violations; violations are data, not exceptions"""
    violations: List[str] = field(default_factory=list)
    max_h: Optional[float] = None
    kernel_eigenvalues: Optional[List[float]] = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, message: str) -> None:
        self.violations.append(message)


@dataclass(frozen=True)
class HypothesisSpec:
    """
    Tested group M with optional rate metadata.

    c1n / c2n are stored for provenance only and never enter a computation.
    """
    group: Tuple[int, ...]
    c1n: Optional[float] = None
    c2n: Optional[float] = None

    def __post_init__(self):
        group = tuple(int(i) for i in self.group)
        if len(group) < 2:
            raise PreconditionError(f"Group needs at least 2 nodes, got {len(group)}")
        if len(set(group)) != len(group):
            raise PreconditionError("Group indices must be distinct")
        for rate in (self.c1n, self.c2n):
            if rate is not None and rate <= 0:
                raise PreconditionError("Rates c1n / c2n must be positive")
        object.__setattr__(self, "group", group)

    def check_nodes(self, n: int) -> None:
        bad = [i for i in self.group if not 0 <= i < n]
        if bad:
            raise PreconditionError(f"Group nodes {bad} outside 0..{n - 1}")
