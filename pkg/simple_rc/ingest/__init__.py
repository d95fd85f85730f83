"""
Ingest module

Adjacency file formats and correlation networks built from series panels.
"""

from .adjacency_io import (
    detect_format,
    load_adjacency,
    save_adjacency,
    adjacency_io,
)
from .correlation import (
    SeriesPanel,
    load_series_panel,
    residualize,
    correlation_network,
)

__all__ = [
    # Adjacency I/O
    "detect_format",
    "load_adjacency",
    "save_adjacency",
    "adjacency_io",

    # Correlation networks
    "SeriesPanel",
    "load_series_panel",
    "residualize",
    "correlation_network",
]
