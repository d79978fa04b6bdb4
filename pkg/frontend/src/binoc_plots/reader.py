"""Read the sweep tool's CSV/JSON tables without touching the numbers.

The renderer is strictly read-only over the computation tool's outputs: no
resampling, no smoothing, no recomputation.  Columns come back exactly as
parsed, in file order.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = ["Table", "MissingColumnError", "load_table"]


class MissingColumnError(KeyError):
    """A recipe asked for a column the input file does not carry."""

    def __init__(self, column: str, path: str):
        super().__init__(column)
        self.column = column
        self.path = path

    def __str__(self) -> str:
        return f"column {self.column!r} missing from {self.path}"


@dataclass
class Table:
    """One loaded input file: ordered columns plus whatever metadata the
    file carried (empty for bare CSV)."""

    path: str
    columns: dict[str, np.ndarray]
    meta: dict = field(default_factory=dict)

    @property
    def x_name(self) -> str:
        return next(iter(self.columns))

    @property
    def x(self) -> np.ndarray:
        return self.columns[self.x_name]

    def column(self, name: str) -> np.ndarray:
        if name not in self.columns:
            raise MissingColumnError(name, self.path)
        return self.columns[name]

    def series_names(self, prefix: str | None = None) -> list[str]:
        """Curve columns (everything after the abscissa), optionally
        restricted to one quantity prefix like ``ae`` or ``beta-s``."""
        names = list(self.columns)[1:]
        if prefix is None:
            return names
        picked = [
            n for n in names if n == prefix or n.startswith(prefix + "[")
        ]
        return picked


def _parse_float(cell: str) -> float:
    return float(cell)


def load_table(path: str | Path) -> Table:
    """Load a CSV or JSON sweep table.

    CSV: header row then rows of numbers.  JSON: an object with ``meta`` and
    ``rows`` (array of objects); null cells become NaN.
    """
    path = Path(path)
    if path.suffix.lower() == ".json":
        payload = json.loads(path.read_text(encoding="utf-8"))
        rows = payload.get("rows", [])
        if not rows:
            raise ValueError(f"{path} carries no rows")
        names = list(rows[0])
        columns = {
            name: np.array(
                [np.nan if row.get(name) is None else float(row[name]) for row in rows]
            )
            for name in names
            if not isinstance(rows[0][name], str)
        }
        # string-valued columns (e.g. receiver labels) are kept verbatim
        for name in names:
            if isinstance(rows[0][name], str):
                columns[name] = np.array([row[name] for row in rows])
        return Table(str(path), columns, payload.get("meta", {}))

    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if len(rows) < 2:
        raise ValueError(f"{path} carries no data rows")
    header, data = rows[0], rows[1:]
    columns: dict[str, np.ndarray] = {}
    for j, name in enumerate(header):
        cells = [row[j] for row in data]
        try:
            columns[name] = np.array([_parse_float(c) for c in cells])
        except ValueError:
            columns[name] = np.array(cells)
    return Table(str(path), columns, {})
