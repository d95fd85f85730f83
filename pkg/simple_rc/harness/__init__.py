"""
Harness module

Monte Carlo size / power studies over the four simulation designs, with
CSV exports and YAML sweep definitions.
"""

from pathlib import Path

from .sim_config import SimConfig, build_sim_config, load_sweep
from .runner import (
    RepResult,
    SimSummary,
    MonteCarloRunner,
    monte_carlo,
    replication_seeds,
)
from .exports import (
    compute_hash,
    size_power_frame,
    ecdf_frame,
    k0_tally_frame,
    build_manifest,
    write_outputs,
)

EXPERIMENT_CONFIG_DIR = Path(__file__).parent / "experiment_configs"

__all__ = [
    # Config
    "SimConfig",
    "build_sim_config",
    "load_sweep",
    "EXPERIMENT_CONFIG_DIR",

    # Runner
    "RepResult",
    "SimSummary",
    "MonteCarloRunner",
    "monte_carlo",
    "replication_seeds",

    # Exports
    "compute_hash",
    "size_power_frame",
    "ecdf_frame",
    "k0_tally_frame",
    "build_manifest",
    "write_outputs",
]
