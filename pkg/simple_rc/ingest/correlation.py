"""
Correlation networks from multivariate time series.

A panel of T observations of n series becomes an adjacency matrix by
hard-thresholding the absolute Pearson correlations, optionally after
regressing every series on a covariate panel (intercept included).
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

import numpy as np
import pandas as pd

from ..config import DEFAULT_CORRELATION_THRESHOLD
from ..errors import ContractViolationError, PreconditionError
from ..spectral.types import AdjacencyMatrix

logger = logging.getLogger("simple_rc.ingest")

MISSING_POLICIES = ("rows", "series")
CONSTANT_TOLERANCE = 1e-12


@dataclass
class SeriesPanel:
    """T x n observations, one column per series, with optional T x f covariates"""
    values: np.ndarray
    names: List[str] = field(default_factory=list)
    covariates: Optional[np.ndarray] = None
    covariate_names: List[str] = field(default_factory=list)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 2:
            raise PreconditionError(f"Panel must be T x n, got shape {self.values.shape}")
        if not self.names:
            self.names = [f"s{k + 1}" for k in range(self.values.shape[1])]
        if len(self.names) != self.values.shape[1]:
            raise PreconditionError(
                f"{len(self.names)} names for {self.values.shape[1]} series"
            )
        if not np.all(np.isfinite(self.values)):
            raise PreconditionError("Panel contains missing or non-finite values")
        if self.covariates is not None:
            self.covariates = np.asarray(self.covariates, dtype=float)
            if self.covariates.ndim == 1:
                self.covariates = self.covariates[:, None]
            if self.covariates.shape[0] != self.values.shape[0]:
                raise PreconditionError(
                    f"Covariates have {self.covariates.shape[0]} rows, panel has {self.values.shape[0]}"
                )
            if not np.all(np.isfinite(self.covariates)):
                raise PreconditionError("Covariates contain missing or non-finite values")
            if not self.covariate_names:
                self.covariate_names = [f"c{k + 1}" for k in range(self.covariates.shape[1])]

    @property
    def T(self) -> int:
        return self.values.shape[0]

    @property
    def n(self) -> int:
        return self.values.shape[1]


def _read_numeric_csv(path: Path) -> pd.DataFrame:
    if not path.exists():
        raise ContractViolationError(f"File not found: {path}")
    try:
        frame = pd.read_csv(path)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise ContractViolationError(f"Could not parse {path}: {e}")
    numeric = frame.apply(pd.to_numeric, errors="coerce")
    # strings that are not numbers are treated as missing
    bad = numeric.isna() & frame.notna()
    if bad.any().any():
        row, col = np.argwhere(bad.to_numpy())[0]
        raise ContractViolationError(
            f"Non-numeric value '{frame.iat[row, col]}' in column '{frame.columns[col]}'",
            line=int(row) + 2
        )
    return numeric


def load_series_panel(
    path,
    covariates_path=None,
    missing: str = "rows"
) -> SeriesPanel:
    """
    Load a series panel from CSV (one column per series, first row names).

    Args:
        path: panel CSV
        covariates_path: optional covariate CSV with the same row count
        missing: 'rows' drops observations with any missing entry,
            'series' drops series with any missing entry

    Returns:
        SeriesPanel with no missing values
    """
    if missing not in MISSING_POLICIES:
        raise PreconditionError(f"missing must be one of {MISSING_POLICIES}, got '{missing}'")

    panel = _read_numeric_csv(Path(path))
    covariates = _read_numeric_csv(Path(covariates_path)) if covariates_path is not None else None
    if covariates is not None and len(covariates) != len(panel):
        raise PreconditionError(
            f"Covariates have {len(covariates)} rows, panel has {len(panel)}"
        )

    if missing == "series":
        dropped = [c for c in panel.columns if panel[c].isna().any()]
        if dropped:
            logger.warning(f"Dropping {len(dropped)} series with missing values: {dropped}")
        panel = panel.drop(columns=dropped)
        keep = np.ones(len(panel), dtype=bool)
        if covariates is not None:
            keep = covariates.notna().all(axis=1).to_numpy()
    else:
        keep = panel.notna().all(axis=1).to_numpy()
        if covariates is not None:
            keep &= covariates.notna().all(axis=1).to_numpy()

    if not keep.all():
        logger.warning(f"Dropping {int((~keep).sum())} observations with missing values")
    panel = panel.loc[keep]
    if covariates is not None:
        covariates = covariates.loc[keep]

    if panel.shape[1] == 0:
        raise PreconditionError(f"No series left in {path}")

    logger.info(f"Loaded panel T={len(panel)} n={panel.shape[1]} from {path}")
    return SeriesPanel(
        values=panel.to_numpy(dtype=float),
        names=[str(c) for c in panel.columns],
        covariates=covariates.to_numpy(dtype=float) if covariates is not None else None,
        covariate_names=[str(c) for c in covariates.columns] if covariates is not None else [],
    )


def residualize(values: np.ndarray, covariates: np.ndarray) -> np.ndarray:
    """
    Least-squares residuals of every column on [1, covariates].

    Solved by normal equations.

    Raises:
        PreconditionError: if the design matrix is rank deficient
    """
    T = values.shape[0]
    Z = np.column_stack([np.ones(T), covariates])
    if T <= Z.shape[1]:
        raise PreconditionError(
            f"Need more observations ({T}) than regressors ({Z.shape[1]})"
        )
    rank = np.linalg.matrix_rank(Z)
    if rank < Z.shape[1]:
        raise PreconditionError(
            f"Covariates are rank deficient (rank {rank} of {Z.shape[1]} with intercept)"
        )
    beta = np.linalg.solve(Z.T @ Z, Z.T @ values)
    return values - Z @ beta


def correlation_network(
    panel: SeriesPanel,
    threshold: float = DEFAULT_CORRELATION_THRESHOLD,
    residualize_covariates: bool = False
) -> AdjacencyMatrix:
    """
    Threshold the absolute Pearson correlations of a panel.

    Args:
        panel: the series
        threshold: X_ij = 1 iff |corr_ij| >= threshold, i != j
        residualize_covariates: regress series on the panel covariates first

    Returns:
        AdjacencyMatrix with zero diagonal

    Raises:
        PreconditionError: T < 3, constant series, missing or rank-deficient covariates
    """
    if panel.T < 3:
        raise PreconditionError(f"Need at least 3 observations, got {panel.T}")

    Y = panel.values
    if residualize_covariates:
        if panel.covariates is None:
            raise PreconditionError("Residualization requested but the panel has no covariates")
        Y = residualize(Y, panel.covariates)

    scale = np.maximum(np.abs(Y).max(axis=0), 1.0)
    spread = Y.std(axis=0, ddof=1)
    constant = np.flatnonzero(spread <= CONSTANT_TOLERANCE * scale)
    if constant.size:
        names = [panel.names[k] for k in constant]
        raise PreconditionError(f"Constant series: {names}")

    corr = np.corrcoef(Y, rowvar=False)
    corr = (corr + corr.T) / 2.0
    X = (np.abs(corr) >= threshold).astype(np.int8)
    np.fill_diagonal(X, 0)

    edges = int(np.triu(X).sum())
    logger.info(f"Correlation network n={panel.n} threshold={threshold}: {edges} edges")
    return AdjacencyMatrix(X, self_loops=False)
