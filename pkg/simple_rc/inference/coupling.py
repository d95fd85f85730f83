"""
Random coupling of a node group into disjoint pairs.
"""

import logging
from typing import List, Sequence

import numpy as np

from ..config import COUPLING_STREAM, SUBSAMPLE_STREAM
from ..errors import PreconditionError
from .types import CouplingPlan

logger = logging.getLogger("simple_rc.inference")


def _distinct_nodes(group: Sequence[int]) -> List[int]:
    nodes = [int(i) for i in group]
    if len(set(nodes)) != len(nodes):
        raise PreconditionError("Group nodes must be distinct")
    if len(nodes) < 2:
        raise PreconditionError(f"Group needs at least 2 nodes, got {len(nodes)}")
    return sorted(nodes)


def random_coupling(group: Sequence[int], seed: int) -> CouplingPlan:
    """
    Pair the group uniformly at random without replacement.

    A uniform permutation of the (sorted) group is read off two at a time;
    for odd groups its last node is dropped, so the dropped node is uniform
    as well. The stream is separate from adjacency sampling streams.

    Args:
        group: node indices
        seed: non-negative integer seed

    Returns:
        CouplingPlan
    """
    nodes = _distinct_nodes(group)
    rng = np.random.default_rng([COUPLING_STREAM, int(seed)])
    order = [nodes[k] for k in rng.permutation(len(nodes))]

    dropped = None
    if len(order) % 2 == 1:
        dropped = order.pop()
        logger.warning(f"Odd group size {len(nodes)}: node {dropped} left out of the coupling")

    pairs = tuple(
        (min(a, b), max(a, b)) for a, b in zip(order[0::2], order[1::2])
    )
    return CouplingPlan(pairs=pairs, seed=int(seed), dropped_node=dropped)


def subsample_group(group: Sequence[int], size: int, seed: int) -> List[int]:
    """
    Uniform subsample of the group (experimental large-group variant).

    Raises:
        PreconditionError: unless 2 <= size <= |group|
    """
    nodes = _distinct_nodes(group)
    if not 2 <= size <= len(nodes):
        raise PreconditionError(f"Subsample size {size} outside 2..{len(nodes)}")
    rng = np.random.default_rng([SUBSAMPLE_STREAM, int(seed)])
    picked = rng.choice(len(nodes), size=size, replace=False)
    return sorted(nodes[k] for k in picked)
