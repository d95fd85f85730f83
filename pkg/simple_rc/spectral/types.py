"""
Spectral data types: adjacency matrices, spectra and residual matrices.
"""

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from ..errors import ContractViolationError, PreconditionError


def _first_offending(mask: np.ndarray) -> tuple:
    """Return the first True position of a 2-D mask as a 1-based (row, col)"""
    i, j = np.argwhere(mask)[0]
    return (int(i) + 1, int(j) + 1)


@dataclass(frozen=True)
class AdjacencyMatrix:
    """
    Undirected, unweighted network.

    Stored dense for the eigensolver. Construction validates that the matrix
    is square, symmetric and binary, and that the diagonal is zero when
    self loops are off.
    """
    values: np.ndarray
    self_loops: bool = False

    def __post_init__(self):
        X = np.asarray(self.values)
        if X.ndim != 2 or X.shape[0] != X.shape[1]:
            raise ContractViolationError(
                f"Adjacency matrix must be square, got shape {X.shape}"
            )
        binary = (X == 0) | (X == 1)
        if not binary.all():
            raise ContractViolationError(
                "Adjacency entries must be 0 or 1",
                index=_first_offending(~binary)
            )
        asym = X != X.T
        if asym.any():
            raise ContractViolationError(
                "Adjacency matrix is not symmetric",
                index=_first_offending(asym)
            )
        if not self.self_loops and np.any(np.diag(X) != 0):
            k = int(np.flatnonzero(np.diag(X))[0]) + 1
            raise ContractViolationError(
                "Nonzero diagonal while self loops are disabled",
                index=(k, k)
            )
        X = X.astype(np.int8, copy=True)
        X.setflags(write=False)
        object.__setattr__(self, "values", X)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @classmethod
    def from_array(
        cls,
        X,
        self_loops: Optional[bool] = None
    ) -> "AdjacencyMatrix":
        """Wrap an array, inferring the self-loop flag from the diagonal"""
        if isinstance(X, AdjacencyMatrix):
            return X
        X = np.asarray(X)
        if self_loops is None:
            self_loops = bool(X.ndim == 2 and np.any(np.diag(X) != 0))
        return cls(X, self_loops=self_loops)

    def degrees(self) -> np.ndarray:
        """Column sums"""
        return self.values.sum(axis=0, dtype=np.int64)


@dataclass(frozen=True)
class Spectrum:
    """
    Eigenpairs ordered by decreasing magnitude.

    eigenvectors holds the vectors as columns; each column has its
    largest-magnitude entry positive.
    """
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return self.eigenvectors.shape[0]

    @property
    def rank(self) -> int:
        """Number of stored eigenpairs"""
        return self.eigenvalues.shape[0]

    def top(self, k0: int):
        """Leading k0 eigenvalues and the n x k0 eigenvector block"""
        if not 1 <= k0 <= self.rank:
            raise PreconditionError(
                f"K0={k0} outside available rank 1..{self.rank}"
            )
        return self.eigenvalues[:k0], self.eigenvectors[:, :k0]

    def reconstruct(self, k0: Optional[int] = None) -> np.ndarray:
        """Sum of the leading k0 rank-one components"""
        k0 = self.rank if k0 is None else k0
        d, V = self.top(k0)
        low_rank = (V * d) @ V.T
        return (low_rank + low_rank.T) / 2.0

    def with_flipped_signs(self, indices: Iterable[int]) -> "Spectrum":
        """Copy with the given eigenvector columns negated (0-based)"""
        V = self.eigenvectors.copy()
        for k in indices:
            V[:, k] = -V[:, k]
        return Spectrum(self.eigenvalues.copy(), V)


@dataclass(frozen=True)
class ResidualMatrix:
    """X minus its leading K0 spectral components"""
    values: np.ndarray
    k0: int

    @property
    def n(self) -> int:
        return self.values.shape[0]
