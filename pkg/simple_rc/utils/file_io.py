"""
File I/O helpers shared by the ingest, harness and CLI layers
"""

import json
import os
from pathlib import Path
from typing import Iterator, Tuple

from ..config import JSON_INDENT
from ..errors import ContractViolationError

TEXT_ENCODINGS = ("utf-8", "utf-8-sig", "latin-1")


def ensure_directories(*directories) -> None:
    """
    Create directories if they don't exist
    """
    for directory in directories:
        Path(directory).mkdir(parents=True, exist_ok=True)


def read_text(filepath) -> str:
    """
    Read a text file, trying the common encodings in turn

    Raises:
        ContractViolationError: if the file is missing or cannot be decoded
    """
    if not os.path.exists(filepath):
        raise ContractViolationError(f"File not found: {filepath}")

    for encoding in TEXT_ENCODINGS:
        try:
            with open(filepath, "r", encoding=encoding) as f:
                return f.read()
        except UnicodeDecodeError:
            continue

    raise ContractViolationError(f"Could not decode text file: {filepath}")


def iter_lines(filepath) -> Iterator[Tuple[int, str]]:
    """(1-based line number, stripped line) pairs"""
    for number, line in enumerate(read_text(filepath).splitlines(), start=1):
        yield number, line.strip()


def save_json(data, filepath, sort_keys: bool = False) -> str:
    """
    Save data as indented JSON

    Args:
        data (dict): JSON-serializable data
        filepath: output path
        sort_keys: sort object keys (stable artifacts)

    Returns:
        str: Path to saved file
    """
    filepath = Path(filepath)
    ensure_directories(filepath.parent)
    with open(filepath, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=JSON_INDENT, ensure_ascii=False, sort_keys=sort_keys)
        f.write("\n")
    return str(filepath)


def get_file_size(filepath) -> str:
    """
    Get file size in human-readable format

    Returns:
        str: File size (e.g., "1.5 MB")
    """
    if not os.path.exists(filepath):
        return "0 B"

    size_bytes = float(os.path.getsize(filepath))

    for unit in ["B", "KB", "MB", "GB"]:
        if size_bytes < 1024.0:
            return f"{size_bytes:.1f} {unit}"
        size_bytes /= 1024.0

    return f"{size_bytes:.1f} TB"
