"""Loading and validation of pairflight CSV files."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np


class CsvError(RuntimeError):
    """The CSV file is missing, malformed, or has the wrong columns."""


@dataclass(frozen=True)
class CsvTable:
    path: Path
    meta: str
    columns: tuple
    data: np.ndarray  # shape (rows, numeric columns); text columns excluded
    text: dict        # name -> list[str] for non-numeric columns

    def col(self, name: str) -> np.ndarray:
        numeric = [c for c in self.columns if c not in self.text]
        return self.data[:, numeric.index(name)]


def load_csv(path, expected_columns=None) -> CsvTable:
    path = Path(path)
    if not path.is_file():
        raise CsvError(f"{path}: no such file")
    lines = path.read_text().splitlines()
    if len(lines) < 4 or not lines[0].startswith("# pairflight"):
        raise CsvError(f"{path}: not a pairflight CSV (missing provenance header)")
    meta = lines[1].lstrip("# ").strip()
    header = lines[3].split(",")
    if expected_columns is not None and header != list(expected_columns):
        raise CsvError(
            f"{path}: column mismatch; expected {list(expected_columns)}, got {header}"
        )
    rows = [l.split(",") for l in lines[4:] if l.strip()]
    if not rows:
        raise CsvError(f"{path}: no data rows")
    if any(len(r) != len(header) for r in rows):
        raise CsvError(f"{path}: ragged rows")
    text = {}
    numeric_idx = []
    for j, name in enumerate(header):
        try:
            float(rows[0][j])
            numeric_idx.append(j)
        except ValueError:
            text[name] = [r[j] for r in rows]
    try:
        data = np.array(
            [[float(r[j]) for j in numeric_idx] for r in rows], dtype=float
        )
    except ValueError as exc:
        raise CsvError(f"{path}: non-numeric data ({exc})") from None
    return CsvTable(path=path, meta=meta, columns=tuple(header), data=data, text=text)
