"""
CSV and manifest exports for Monte Carlo summaries.

Outputs are deterministic given the configurations and master seeds:
no timestamps, stable row order, fixed float format.
"""

import hashlib
import logging
from pathlib import Path
from typing import Dict, List, Sequence

import pandas as pd

from .._version import __version__
from ..config import (
    CSV_FLOAT_FORMAT,
    ECDF_FILE,
    ECDF_GRID_POINTS,
    K0_TALLY_FILE,
    MANIFEST_FILE,
    SIZE_POWER_FILE,
)
from ..utils.file_io import ensure_directories, save_json
from .runner import SimSummary
from .sim_config import SimConfig

logger = logging.getLogger("simple_rc.harness")

CONFIG_COLUMNS = [
    "example", "n", "K", "n0", "theta", "rho", "delta", "m", "k0",
    "variant", "scope", "alpha", "reps", "seed",
]


def compute_hash(config: SimConfig) -> str:
    """
    Short digest of a resolved SimConfig.

    Pydantic serializes fields in declaration order, so equal configs give
    equal digests regardless of how they were built.
    """
    return hashlib.blake2b(config.model_dump_json().encode("utf-8"), digest_size=8).hexdigest()


def config_hash(summary: SimSummary) -> str:
    return compute_hash(summary.config)


def size_power_frame(summaries: Sequence[SimSummary]) -> pd.DataFrame:
    """One row per configuration: config columns, rate and Wilson CI"""
    rows = []
    for s in summaries:
        cfg = s.config.model_dump(mode="json")
        row = {col: cfg[col] for col in CONFIG_COLUMNS}
        row.update({
            "label": s.label,
            "config_hash": config_hash(s),
            "rejections": s.rejections,
            "failures": s.failures,
            "rate": s.rejection_rate,
            "ci_low": s.ci_low,
            "ci_high": s.ci_high,
        })
        rows.append(row)
    return pd.DataFrame(rows)


def ecdf_frame(summaries: Sequence[SimSummary], points: int = ECDF_GRID_POINTS) -> pd.DataFrame:
    """Long table (label, config_hash, x, empirical, theoretical)"""
    frames = []
    for s in summaries:
        curve = s.ecdf(points)
        frame = pd.DataFrame(curve)
        frame.insert(0, "config_hash", config_hash(s))
        frame.insert(0, "label", s.label)
        frames.append(frame)
    if not frames:
        return pd.DataFrame(columns=["label", "config_hash", "x", "empirical", "theoretical"])
    return pd.concat(frames, ignore_index=True)


def k0_tally_frame(summaries: Sequence[SimSummary]) -> pd.DataFrame:
    """Counts of the K0 used per replication"""
    rows = [
        {"label": s.label, "config_hash": config_hash(s), "k0": k0, "count": count}
        for s in summaries
        for k0, count in s.k0_counts.items()
    ]
    return pd.DataFrame(rows, columns=["label", "config_hash", "k0", "count"])


def build_manifest(summaries: Sequence[SimSummary], files: List[str]) -> Dict:
    """Run manifest: library version, resolved configs and their hashes"""
    return {
        "version": __version__,
        "configs": [
            {
                "label": s.label,
                "config_hash": config_hash(s),
                "config": s.config.model_dump(mode="json"),
                "failures": s.failure_messages,
            }
            for s in summaries
        ],
        "files": sorted(files),
    }


def write_outputs(summaries: Sequence[SimSummary], out_dir) -> Dict[str, Path]:
    """
    Write size_power.csv, ecdf.csv, k0_tally.csv and the run manifest.

    Returns:
        Mapping file name -> path
    """
    out_dir = Path(out_dir)
    ensure_directories(out_dir)

    paths = {
        SIZE_POWER_FILE: out_dir / SIZE_POWER_FILE,
        ECDF_FILE: out_dir / ECDF_FILE,
        K0_TALLY_FILE: out_dir / K0_TALLY_FILE,
        MANIFEST_FILE: out_dir / MANIFEST_FILE,
    }
    size_power_frame(summaries).to_csv(paths[SIZE_POWER_FILE], index=False, float_format=CSV_FLOAT_FORMAT)
    ecdf_frame(summaries).to_csv(paths[ECDF_FILE], index=False, float_format=CSV_FLOAT_FORMAT)
    k0_tally_frame(summaries).to_csv(paths[K0_TALLY_FILE], index=False, float_format=CSV_FLOAT_FORMAT)

    manifest = build_manifest(summaries, [SIZE_POWER_FILE, ECDF_FILE, K0_TALLY_FILE])
    save_json(manifest, paths[MANIFEST_FILE], sort_keys=True)

    logger.info(f"Wrote {len(paths)} files to {out_dir}")
    return paths
