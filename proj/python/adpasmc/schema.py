"""Reader for the CLI's CSV output with header and shape validation."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from . import _core


class SchemaError(ValueError):
    pass


def _expected(header: list[str]) -> list[str]:
    for cols in (_core.columns(), _core.siso_columns()):
        if header == cols:
            return cols
    raise SchemaError(f"unrecognised CSV header ({len(header)} columns, first {header[:3]})")


def read_csv(path: str | Path) -> dict[str, np.ndarray]:
    """Column name -> values. Raises SchemaError on a wrong header, a short
    row or a non-numeric cell."""
    with open(path, newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file") from None
        cols = _expected(header)
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(cols):
                raise SchemaError(f"{path}:{lineno}: {len(row)} fields, expected {len(cols)}")
            try:
                rows.append([float(x) for x in row])
            except ValueError as e:
                raise SchemaError(f"{path}:{lineno}: {e}") from None
    data = np.array(rows, dtype=float).reshape(-1, len(cols))
    if data.shape[0] > 1 and np.any(np.diff(data[:, 0]) <= 0):
        raise SchemaError(f"{path}: time column not increasing")
    return {name: data[:, i] for i, name in enumerate(cols)}
