"""
Utilities module
"""

from .file_io import (
    ensure_directories,
    read_text,
    iter_lines,
    save_json,
    get_file_size,
)

__all__ = [
    "ensure_directories",
    "read_text",
    "iter_lines",
    "save_json",
    "get_file_size",
]
