"""Readers for the xyquench CSV dialect.

Files carry '# key = value' comment lines, then a header row, then data rows.
Sweep files hold a rectangular (h1, t) grid written h1-major; revival files
hold (measure, n, t_r) points with the fit coefficients in the metadata.
Readers validate shape up front so the figure code never sees a malformed
table.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["SweepTable", "RevivalTable", "read_table", "load_sweep", "load_revival"]


def read_table(path: str) -> tuple[dict[str, str], list[str] | None, list[list[str]]]:
    """(meta, header, rows) with '#' lines collected as metadata.

    Purely lexical: width and grid validation happen in the loaders, which
    know what shape to expect.
    """
    meta: dict[str, str] = {}
    header: list[str] | None = None
    rows: list[list[str]] = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if line.startswith("#"):
                key, sep, value = line[1:].partition(" = ")
                if sep:
                    meta[key.strip()] = value.strip()
                continue
            if not line.strip():
                continue
            cells = [c.strip() for c in line.split(",")]
            if header is None:
                header = cells
            else:
                rows.append(cells)
    return meta, header, rows


def _require_rows(path: str, header: list[str] | None,
                  rows: list[list[str]]) -> list[str]:
    if header is None or not rows:
        raise ValueError(f"{path}: ragged grid: file contains 0 data rows")
    for k, cells in enumerate(rows):
        if len(cells) != len(header):
            raise ValueError(f"{path}: ragged grid: data row {k + 1} has "
                             f"{len(cells)} cells, header has {len(header)}")
    return header


def _column(path: str, header: list[str], rows: list[list[str]], name: str) -> list[str]:
    if name not in header:
        raise ValueError(f"{path}: missing column {name!r}; "
                         f"available columns: {', '.join(header)}")
    k = header.index(name)
    return [row[k] for row in rows]


def _floats(path: str, name: str, cells: list[str]) -> np.ndarray:
    try:
        return np.array([float(c) for c in cells], dtype=float)
    except ValueError:
        bad = next(c for c in cells if not _is_float(c))
        raise ValueError(f"{path}: column {name!r} is not numeric: {bad!r}") from None


def _is_float(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


@dataclass(frozen=True)
class SweepTable:
    """Rectangular sweep: value grids indexed [h1, t]."""

    meta: dict[str, str]
    t: np.ndarray
    h1: np.ndarray
    values: dict[str, np.ndarray]

    def measures(self) -> tuple[str, ...]:
        return tuple(self.values)


@dataclass(frozen=True)
class RevivalTable:
    """Revival-time points grouped by measure, in file order."""

    meta: dict[str, str]
    series: dict[str, tuple[np.ndarray, np.ndarray]]

    def measures(self) -> tuple[str, ...]:
        return tuple(self.series)


def load_sweep(path: str) -> SweepTable:
    """Read a sweep CSV and rebuild its rectangular (h1, t) grid.

    Row order does not matter; every (h1, t) pair must appear exactly once.
    """
    meta, header, rows = read_table(path)
    header = _require_rows(path, header, rows)
    t = _floats(path, "t", _column(path, header, rows, "t"))
    h1 = _floats(path, "h1", _column(path, header, rows, "h1"))
    t_axis = np.unique(t)
    h1_axis = np.unique(h1)
    if t_axis.size * h1_axis.size != len(rows):
        raise ValueError(f"{path}: ragged grid: {len(rows)} rows cannot fill a "
                         f"{h1_axis.size} x {t_axis.size} (h1 x t) grid")
    ti = np.searchsorted(t_axis, t)
    hi = np.searchsorted(h1_axis, h1)
    filled = np.zeros((h1_axis.size, t_axis.size), dtype=bool)
    filled[hi, ti] = True
    if not filled.all():
        raise ValueError(f"{path}: ragged grid: some (h1, t) points are "
                         f"duplicated while others are missing")
    values: dict[str, np.ndarray] = {}
    for name in header:
        if name in ("t", "h1"):
            continue
        grid = np.empty((h1_axis.size, t_axis.size))
        grid[hi, ti] = _floats(path, name, _column(path, header, rows, name))
        values[name] = grid
    if not values:
        raise ValueError(f"{path}: no measure columns besides t and h1")
    return SweepTable(meta=meta, t=t_axis, h1=h1_axis, values=values)


def load_revival(path: str) -> RevivalTable:
    """Read a revival CSV: size column 'n' (or 'N'), times 't_r'.

    A 'measure' column splits the rows into named series; without one the
    whole file is a single series named 'all'.
    """
    meta, header, rows = read_table(path)
    header = _require_rows(path, header, rows)
    size_name = "n" if "n" in header else "N"
    sizes = _floats(path, size_name, _column(path, header, rows, size_name))
    times = _floats(path, "t_r", _column(path, header, rows, "t_r"))
    if "measure" in header:
        labels = _column(path, header, rows, "measure")
    else:
        labels = ["all"] * len(rows)
    series: dict[str, tuple[np.ndarray, np.ndarray]] = {}
    for name in dict.fromkeys(labels):
        mask = np.array([lab == name for lab in labels])
        series[name] = (sizes[mask], times[mask])
    return RevivalTable(meta=meta, series=series)
