"""Atomic CSV writing with a fixed numeric format.

Every table is written with a '#' provenance comment line, a header line, and
values in scientific notation with 17 significant digits, so identical inputs
produce byte-identical files.  Writes go to a temporary file in the target
directory followed by an atomic rename.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import numpy as np

__all__ = ["format_value", "write_table", "read_table"]


def format_value(x: float) -> str:
    """Scientific notation, 17 significant digits."""
    return f"{x:.16e}"


def write_table(path, columns, rows, provenance: str = "") -> Path:
    """Write rows of floats atomically; returns the final path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            if provenance:
                fh.write(f"# {provenance}\n")
            fh.write(",".join(columns) + "\n")
            for row in rows:
                fh.write(",".join(format_value(float(v)) for v in row) + "\n")
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return path


def read_table(path) -> tuple[list[str], np.ndarray]:
    """Read a table written by :func:`write_table`; comments are skipped."""
    columns: list[str] = []
    values: list[list[float]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if not columns:
                columns = line.split(",")
                continue
            values.append([float(tok) for tok in line.split(",")])
    data = np.asarray(values, dtype=float) if values else np.empty((0, len(columns)))
    return columns, data
