"""
Adjacency matrix file formats.

Formats:
- edge-list: header line `n=<count>`, then one `i j` pair (1-based) per line
- dense-csv: n rows of n comma-separated 0/1 entries
- coordinate: Matrix Market `coordinate` file (pattern / integer / real
  field, general or symmetric), entries `i j [1]`

Lines starting with '#' or '%' (other than the Matrix Market banner) are
comments in every format.
"""

import logging
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np
import scipy.io
import scipy.sparse

from ..enums import AdjacencyFormat
from ..errors import ContractViolationError, PreconditionError
from ..spectral.types import AdjacencyMatrix
from ..utils.file_io import ensure_directories, iter_lines

logger = logging.getLogger("simple_rc.ingest")

COMMENT_PREFIXES = ("#", "%")


def _is_comment(line: str) -> bool:
    return not line or line.startswith(COMMENT_PREFIXES)


def _parse_int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ContractViolationError(f"Expected an integer {what}, got '{token}'", line=line)


def _check_node(value: int, n: int, line: int) -> int:
    if not 1 <= value <= n:
        raise ContractViolationError(f"Node {value} outside 1..{n}", line=line)
    return value - 1


def _assemble(n: int, edges: List[Tuple[int, int]], symmetric: bool) -> np.ndarray:
    X = np.zeros((n, n), dtype=np.int8)
    if edges:
        rows, cols = np.array(edges, dtype=np.int64).T
        X[rows, cols] = 1
        if symmetric:
            X[cols, rows] = 1
    return X


# ============================================================================
# EDGE LIST
# ============================================================================

def _load_edge_list(path: Path) -> np.ndarray:
    n: Optional[int] = None
    edges: List[Tuple[int, int]] = []
    for number, line in iter_lines(path):
        if _is_comment(line):
            continue
        if n is None:
            key, _, value = line.partition("=")
            if key.strip() != "n" or not value.strip():
                raise ContractViolationError("Edge list must start with a header 'n=<count>'", line=number)
            n = _parse_int(value.strip(), number, "node count")
            if n < 1:
                raise ContractViolationError(f"Node count must be positive, got {n}", line=number)
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ContractViolationError(f"Expected 'i j', got '{line}'", line=number)
        i = _check_node(_parse_int(tokens[0], number, "node"), n, number)
        j = _check_node(_parse_int(tokens[1], number, "node"), n, number)
        edges.append((i, j))
    if n is None:
        raise ContractViolationError(f"Edge list {path} has no 'n=<count>' header")
    return _assemble(n, edges, symmetric=True)


def _save_edge_list(X: AdjacencyMatrix, path: Path) -> None:
    rows, cols = np.nonzero(np.triu(X.values))
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"n={X.n}\n")
        for i, j in zip(rows, cols):
            f.write(f"{i + 1} {j + 1}\n")


# ============================================================================
# DENSE CSV
# ============================================================================

def _load_dense_csv(path: Path) -> np.ndarray:
    rows: List[List[int]] = []
    width: Optional[int] = None
    for number, line in iter_lines(path):
        if _is_comment(line):
            continue
        tokens = [t.strip() for t in line.split(",")]
        if width is None:
            width = len(tokens)
        elif len(tokens) != width:
            raise ContractViolationError(
                f"Expected {width} columns, got {len(tokens)}", line=number
            )
        rows.append([_parse_int(t, number, "entry") for t in tokens])
    if not rows:
        raise ContractViolationError(f"Dense CSV {path} is empty")
    if len(rows) != width:
        raise ContractViolationError(f"Dense CSV is {len(rows)} x {width}, expected square")
    return np.array(rows, dtype=np.int64)


def _save_dense_csv(X: AdjacencyMatrix, path: Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for row in X.values:
            f.write(",".join(str(int(v)) for v in row) + "\n")


# ============================================================================
# COORDINATE (MATRIX MARKET)
# ============================================================================

def _parse_banner(line: str, number: int) -> Tuple[str, str]:
    tokens = line.lower().split()
    if len(tokens) != 5 or tokens[0] != "%%matrixmarket" or tokens[1] != "matrix":
        raise ContractViolationError(f"Malformed Matrix Market banner '{line}'", line=number)
    layout, field, symmetry = tokens[2:]
    if layout != "coordinate":
        raise ContractViolationError(f"Only coordinate layout is supported, got '{layout}'", line=number)
    if field not in ("pattern", "integer", "real"):
        raise ContractViolationError(f"Unsupported field '{field}'", line=number)
    if symmetry not in ("general", "symmetric"):
        raise ContractViolationError(f"Unsupported symmetry '{symmetry}'", line=number)
    return field, symmetry


def _load_coordinate(path: Path) -> np.ndarray:
    lines = iter_lines(path)
    try:
        number, banner = next(lines)
    except StopIteration:
        raise ContractViolationError(f"Coordinate file {path} is empty")
    field, symmetry = _parse_banner(banner, number)

    size = None
    edges: List[Tuple[int, int]] = []
    declared = 0
    for number, line in lines:
        if _is_comment(line):
            continue
        tokens = line.split()
        if size is None:
            if len(tokens) != 3:
                raise ContractViolationError("Expected a size line 'rows cols entries'", line=number)
            rows, cols, declared = (_parse_int(t, number, "size") for t in tokens)
            if rows != cols:
                raise ContractViolationError(f"Matrix is {rows} x {cols}, expected square", line=number)
            size = rows
            continue
        expected = 2 if field == "pattern" else 3
        if len(tokens) != expected:
            raise ContractViolationError(f"Expected {expected} fields, got '{line}'", line=number)
        i = _check_node(_parse_int(tokens[0], number, "row"), size, number)
        j = _check_node(_parse_int(tokens[1], number, "column"), size, number)
        if field != "pattern":
            try:
                value = float(tokens[2])
            except ValueError:
                raise ContractViolationError(f"Non-numeric entry '{tokens[2]}'", line=number)
            if value == 0.0:
                continue
            if value != 1.0:
                raise ContractViolationError(f"Entry {tokens[2]} is not binary", line=number)
        edges.append((i, j))

    if size is None:
        raise ContractViolationError(f"Coordinate file {path} has no size line")
    if field == "pattern" and len(edges) != declared:
        logger.warning(f"{path}: size line declares {declared} entries, found {len(edges)}")
    return _assemble(size, edges, symmetric=(symmetry == "symmetric"))


def _save_coordinate(X: AdjacencyMatrix, path: Path) -> None:
    sparse = scipy.sparse.coo_matrix(np.tril(X.values).astype(np.int64))
    scipy.io.mmwrite(str(path), sparse, field="integer", symmetry="symmetric")


# ============================================================================
# PUBLIC API
# ============================================================================

_LOADERS = {
    AdjacencyFormat.EDGE_LIST: _load_edge_list,
    AdjacencyFormat.DENSE_CSV: _load_dense_csv,
    AdjacencyFormat.COORDINATE: _load_coordinate,
}

_SAVERS = {
    AdjacencyFormat.EDGE_LIST: _save_edge_list,
    AdjacencyFormat.DENSE_CSV: _save_dense_csv,
    AdjacencyFormat.COORDINATE: _save_coordinate,
}

_SUFFIXES = {
    ".txt": AdjacencyFormat.EDGE_LIST,
    ".edges": AdjacencyFormat.EDGE_LIST,
    ".csv": AdjacencyFormat.DENSE_CSV,
    ".mtx": AdjacencyFormat.COORDINATE,
}


def detect_format(path) -> AdjacencyFormat:
    """Format from the file suffix"""
    suffix = Path(path).suffix.lower()
    if suffix not in _SUFFIXES:
        raise PreconditionError(f"Cannot infer adjacency format from '{suffix}'; pass a format")
    return _SUFFIXES[suffix]


def load_adjacency(path, fmt: Optional[Union[AdjacencyFormat, str]] = None) -> AdjacencyMatrix:
    """
    Read an adjacency matrix.

    The self-loop flag is inferred from the diagonal.

    Raises:
        ContractViolationError: on parse failures (with line number),
            asymmetric or non-binary matrices (with index)
    """
    path = Path(path)
    fmt = AdjacencyFormat(fmt) if fmt is not None else detect_format(path)
    values = _LOADERS[fmt](path)
    adjacency = AdjacencyMatrix.from_array(values)
    logger.info(f"Loaded {fmt.value} adjacency n={adjacency.n} from {path}")
    return adjacency


def save_adjacency(X, path, fmt: Optional[Union[AdjacencyFormat, str]] = None) -> Path:
    """Write an adjacency matrix; the file round-trips through load_adjacency"""
    path = Path(path)
    fmt = AdjacencyFormat(fmt) if fmt is not None else detect_format(path)
    adjacency = AdjacencyMatrix.from_array(X)
    ensure_directories(path.parent)
    _SAVERS[fmt](adjacency, path)
    logger.debug(f"Saved {fmt.value} adjacency n={adjacency.n} to {path}")
    return path


def adjacency_io(path, fmt=None, direction: str = "load", matrix=None):
    """
    Load or save an adjacency matrix.

    Args:
        path: file path
        fmt: AdjacencyFormat or its value; inferred from the suffix if None
        direction: 'load' or 'save'
        matrix: matrix to save (direction='save')

    Returns:
        AdjacencyMatrix on load, the written path on save
    """
    if direction == "load":
        return load_adjacency(path, fmt)
    if direction == "save":
        if matrix is None:
            raise PreconditionError("Saving needs a matrix")
        return save_adjacency(matrix, path, fmt)
    raise PreconditionError(f"direction must be 'load' or 'save', got '{direction}'")
