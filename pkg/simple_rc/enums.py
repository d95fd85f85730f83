"""
Shared status enums.
"""

from enum import Enum


class Variant(str, Enum):
    """Test statistic variant"""
    T = "T"                 # eigenvector rows
    T_RATIO = "T_ratio"     # eigenvector ratios, degree-free


class Scope(str, Enum):
    """Pair test or group test"""
    PAIR = "pair"
    GROUP = "group"


class Provenance(str, Enum):
    """Where a covariance estimate came from"""
    POPULATION = "population"
    PLUGIN = "plugin"


class AdjacencyFormat(str, Enum):
    """On-disk adjacency formats"""
    EDGE_LIST = "edge-list"
    DENSE_CSV = "dense-csv"
    COORDINATE = "coordinate"


def degrees_of_freedom(variant: Variant, k0: int) -> int:
    """K0 for T, K0 - 1 for T_ratio"""
    return k0 if Variant(variant) is Variant.T else k0 - 1
