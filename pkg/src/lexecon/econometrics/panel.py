"""Monthly macro panels: loading, merging sentiment series, validation.

A panel holds aligned monthly observations with no internal gaps; any
gap is an error rather than something to interpolate away.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from lexecon.errors import DataError
from lexecon.sentiment import SentimentSeries


def _month_ordinal(month: str) -> int:
    try:
        y, m = month.split("-")
        yi, mi = int(y), int(m)
        if not 1 <= mi <= 12:
            raise ValueError
    except ValueError:
        raise DataError(f"bad month {month!r}; expected YYYY-MM") from None
    return yi * 12 + (mi - 1)


@dataclass(frozen=True)
class MacroPanel:
    """Aligned monthly observation matrix (variables in columns)."""

    variable_names: tuple[str, ...]
    months: tuple[str, ...]
    values: np.ndarray = field(repr=False)
    log_applied: tuple[bool, ...] = ()

    def __post_init__(self):
        t, k = self.values.shape
        if t != len(self.months) or k != len(self.variable_names):
            raise DataError("panel shape does not match its labels")
        if not np.all(np.isfinite(self.values)):
            raise DataError("panel contains missing or non-finite cells")
        ords = [_month_ordinal(m) for m in self.months]
        if any(b - a != 1 for a, b in zip(ords, ords[1:])):
            raise DataError("panel months have internal gaps or duplicates")
        if not self.log_applied:
            object.__setattr__(self, "log_applied",
                               tuple(False for _ in self.variable_names))

    @property
    def n_obs(self) -> int:
        return self.values.shape[0]

    def column(self, name: str) -> np.ndarray:
        try:
            i = self.variable_names.index(name)
        except ValueError:
            raise DataError(f"panel has no variable {name!r}") from None
        return self.values[:, i]

    def subset(self, names) -> "MacroPanel":
        idx = [self.variable_names.index(n) for n in names]
        return MacroPanel(variable_names=tuple(names), months=self.months,
                          values=self.values[:, idx],
                          log_applied=tuple(self.log_applied[i] for i in idx))


def load_panel_csv(path: str | Path) -> tuple[tuple[str, ...], dict[str, dict[str, float]]]:
    """Read a ``month,<var1>,...`` CSV into per-variable month maps."""
    path = Path(path)
    if not path.is_file():
        raise DataError(f"panel file not found: {path}")
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[0].strip().lower() != "month":
            raise DataError(f"{path}: first column must be 'month'")
        names = tuple(h.strip() for h in header[1:])
        if not names:
            raise DataError(f"{path}: no variable columns")
        columns: dict[str, dict[str, float]] = {n: {} for n in names}
        for lineno, row in enumerate(reader, 2):
            if not row:
                continue
            if len(row) != len(names) + 1:
                raise DataError(f"{path}:{lineno}: ragged row")
            month = row[0].strip()
            _month_ordinal(month)
            for name, cell in zip(names, row[1:]):
                cell = cell.strip()
                if cell == "":
                    continue  # missing; handled by window trimming
                try:
                    columns[name][month] = float(cell)
                except ValueError:
                    raise DataError(
                        f"{path}:{lineno}: non-numeric cell for "
                        f"{name!r}") from None
    return names, columns


def assemble_panel(csv_path: str | Path,
                   series: dict[str, SentimentSeries] | None = None,
                   log_columns=(), order=None) -> MacroPanel:
    """Build a panel from a macro CSV plus optional sentiment series.

    All columns are trimmed to the maximal common month window; a gap
    inside that window is an error.  ``log_columns`` are transformed with
    the natural log (values must be positive).
    """
    names, columns = load_panel_csv(csv_path)
    all_names = list(names)
    for name, s in (series or {}).items():
        if name in columns:
            raise DataError(f"series {name!r} collides with a panel column")
        columns[name] = dict(zip(s.months, s.values))
        all_names.append(name)

    if order is not None:
        missing = [n for n in order if n not in columns]
        if missing:
            raise DataError(f"ordered variables not found: {missing}")
        all_names = list(order)

    starts, ends = [], []
    for name in all_names:
        col = columns[name]
        if not col:
            raise DataError(f"variable {name!r} has no observations")
        ords = sorted(_month_ordinal(m) for m in col)
        starts.append(ords[0])
        ends.append(ords[-1])
    lo, hi = max(starts), min(ends)
    if lo > hi:
        raise DataError("variables share no common month window")
    window = [f"{o // 12:04d}-{o % 12 + 1:02d}" for o in range(lo, hi + 1)]

    log_set = set(log_columns)
    unknown = log_set - set(all_names)
    if unknown:
        raise DataError(f"log_columns not in panel: {sorted(unknown)}")
    data = np.empty((len(window), len(all_names)))
    for j, name in enumerate(all_names):
        col = columns[name]
        gaps = [m for m in window if m not in col]
        if gaps:
            raise DataError(f"variable {name!r} has internal gaps "
                            f"(first: {gaps[:3]})")
        vals = np.array([col[m] for m in window])
        if name in log_set:
            if np.any(vals <= 0):
                raise DataError(f"cannot log non-positive values in {name!r}")
            vals = np.log(vals)
        data[:, j] = vals
    return MacroPanel(variable_names=tuple(all_names), months=tuple(window),
                      values=data,
                      log_applied=tuple(n in log_set for n in all_names))
