"""
Named model presets for the four simulation designs.

Layout (K communities, n0 pure nodes each):
- nodes [k*n0, (k+1)*n0) are pure nodes of community k
- the remaining n - K*n0 nodes split into four equal blocks with mixed
  profiles a_1 .. a_4

Examples 1 and 3 are MM models with sparsity theta; examples 2 and 4 are
DCMM models with vartheta_i = r * U_i, U_i ~ Uniform[0.5, 1].
Examples 3 and 4 move a_2 towards a_1 by delta and test a half/half group.
"""

from typing import List, Optional, Tuple

import numpy as np

from ..config import MODEL_STREAM
from ..errors import ConfigurationError
from .models import NetworkModel

PRESET_NAMES = ("example1", "example2", "example3", "example4")


def community_kernel(K: int, rho: float) -> np.ndarray:
    """Unit diagonal, off-diagonal entries rho / |k - l|"""
    idx = np.arange(K)
    dist = np.abs(idx[:, None] - idx[None, :]).astype(np.float64)
    P = np.ones((K, K))
    off = dist > 0
    P[off] = rho / dist[off]
    return P


def mixed_profiles(K: int, delta: Optional[float] = None) -> List[np.ndarray]:
    """
    The four mixed membership profiles.

    a_1 puts 0.6 on community 2, a_2 on community 1, a_3 on community 3,
    the rest spread evenly; a_4 is uniform. With delta set, a_2 is
    a_1 + delta * (e_1 - e_2) instead.
    """
    if K < 3:
        raise ConfigurationError(f"Mixed profiles need K >= 3, got K={K}")
    rest = 0.4 / (K - 1)

    def peaked(k: int) -> np.ndarray:
        a = np.full(K, rest)
        a[k] = 0.6
        return a

    a1 = peaked(1)
    if delta is None:
        a2 = peaked(0)
    else:
        if not 0.0 <= delta <= 0.6:
            raise ConfigurationError(f"delta must lie in [0, 0.6], got {delta}")
        a2 = a1.copy()
        a2[0] += delta
        a2[1] -= delta
    return [a1, a2, peaked(2), np.full(K, 1.0 / K)]


def _layout(n: int, K: int, n0: int, delta: Optional[float]) -> Tuple[np.ndarray, List[np.ndarray]]:
    if n0 < 1 or K * n0 >= n:
        raise ConfigurationError(f"Need 1 <= n0 and K*n0 < n (n={n}, K={K}, n0={n0})")
    if n - K * n0 < 4:
        raise ConfigurationError("Need at least four mixed nodes")

    Pi = np.zeros((n, K))
    for k in range(K):
        Pi[k * n0:(k + 1) * n0, k] = 1.0

    mixed = np.arange(K * n0, n)
    blocks = np.array_split(mixed, 4)
    for block, profile in zip(blocks, mixed_profiles(K, delta)):
        Pi[block] = profile
    return Pi, blocks


def _representative_group(blocks: List[np.ndarray], m: int, split: bool) -> List[int]:
    if split:
        first, second = m - m // 2, m // 2
        if first > blocks[0].size or second > blocks[1].size:
            raise ConfigurationError(f"Group size m={m} exceeds the mixed blocks")
        return [int(i) for i in blocks[0][:first]] + [int(i) for i in blocks[1][:second]]
    if m > blocks[0].size:
        raise ConfigurationError(f"Group size m={m} exceeds the a_1 block ({blocks[0].size})")
    return [int(i) for i in blocks[0][:m]]


def build_preset(
    example: int,
    n: int = 3000,
    K: int = 5,
    n0: int = 300,
    signal: float = 0.5,
    rho: float = 0.2,
    delta: Optional[float] = None,
    m: int = 10,
    seed: int = 0,
    self_loops: bool = False
) -> Tuple[NetworkModel, List[int]]:
    """
    Build one of the four simulation models and its representative group.

    Args:
        example: 1..4
        signal: theta (examples 1, 3) or r^2 (examples 2, 4)
        delta: profile shift for examples 3, 4 (defaults to 0)
        m: size of the tested group
        seed: seed for the DCMM degree draw

    Returns:
        (NetworkModel, group node indices)
    """
    if example not in (1, 2, 3, 4):
        raise ConfigurationError(f"Unknown example {example}; expected 1..4")
    if signal <= 0:
        raise ConfigurationError(f"Signal strength must be positive, got {signal}")
    if m < 2:
        raise ConfigurationError(f"Group size must be at least 2, got m={m}")
    if example in (1, 2) and delta not in (None, 0, 0.0):
        raise ConfigurationError("delta only applies to examples 3 and 4")

    shifted = example in (3, 4)
    Pi, blocks = _layout(n, K, n0, (delta or 0.0) if shifted else None)
    P = community_kernel(K, rho)
    group = _representative_group(blocks, m, split=shifted)
    name = f"example{example}"

    if example in (1, 3):
        model = NetworkModel(Pi, P, theta=signal, self_loops=self_loops, name=name)
    else:
        rng = np.random.default_rng([MODEL_STREAM, int(seed)])
        degrees = np.sqrt(signal) * rng.uniform(0.5, 1.0, size=n)
        model = NetworkModel(Pi, P, degrees=degrees, self_loops=self_loops, name=name)
    return model, group
