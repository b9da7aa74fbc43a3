"""
CSV handling for run output.
Deterministic rendering plus async file access with per-file locking.
"""

import asyncio
import math
import os
from contextlib import asynccontextmanager
from typing import Any, Iterable, Optional, Sequence

import aiofiles
import numpy as np
from pydantic import BaseModel


class FileLock:
    """Simple file locking mechanism for async file operations."""

    def __init__(self):
        self.locks = {}

    @asynccontextmanager
    async def acquire(self, filename):
        if filename not in self.locks:
            self.locks[filename] = asyncio.Lock()
        async with self.locks[filename]:
            yield


# Global file lock manager
file_lock_manager = FileLock()


def format_value(value: Any, digits: int = 12) -> str:
    """Numbers to `digits` significant digits; None to an empty cell."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        # avoid "-0"
        if v == 0.0:
            v = 0.0
        return f"{v:.{digits}g}"
    return str(value)


def render_csv(
    columns: Sequence[str],
    rows: Iterable[Sequence[Any]],
    metadata: Optional[dict] = None,
    digits: int = 12,
) -> str:
    """
    Comma-separated text with '#'-prefixed metadata lines first.

    Args:
        columns: Header names
        rows: Row values, formatted by format_value
        metadata: Ordered key/value pairs written as '# key: value'
        digits: Significant digits for floats

    Returns:
        The full CSV document, newline terminated
    """
    lines = []
    for key, value in (metadata or {}).items():
        if isinstance(value, BaseModel):
            value = value.model_dump_json()
        lines.append(f"# {key}: {value}")
    lines.append(",".join(columns))
    for row in rows:
        if len(row) != len(columns):
            raise ValueError(f"row has {len(row)} values for {len(columns)} columns")
        lines.append(",".join(format_value(v, digits) for v in row))
    return "\n".join(lines) + "\n"


async def use_csv(file_path: str, mode: str, content: Optional[str] = None) -> Optional[str]:
    """
    Async CSV file read/write with file locking.

    Args:
        file_path: Path to the CSV file
        mode: 'r' for read, 'w' for write
        content: Text to write (required for mode='w')

    Returns:
        File text for read mode (None if missing), None for write mode

    Raises:
        ValueError: If mode is invalid
        IOError: If file operations fail
    """
    async with file_lock_manager.acquire(file_path):
        if mode == "w":
            if content is None:
                raise ValueError("content is required for mode='w'")
            try:
                directory = os.path.dirname(file_path)
                if directory:
                    os.makedirs(directory, exist_ok=True)
                async with aiofiles.open(file_path, mode="w", encoding="utf-8", newline="") as file:
                    await file.write(content)
            except IOError as e:
                raise IOError(f"Error writing run file: {str(e)}")
            return None

        elif mode == "r":
            try:
                if os.path.exists(file_path):
                    async with aiofiles.open(file_path, mode="r", encoding="utf-8") as file:
                        return await file.read()
                return None
            except IOError as e:
                raise IOError(f"Error reading run file: {str(e)}")
        else:
            raise ValueError("Invalid mode. Use 'r' for read or 'w' for write.")
