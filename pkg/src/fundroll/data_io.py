"""CSV and JSON input/output.

Curve history CSV schema (one row per observation point):

    date,tenor_months,rate_cc
    1995-01-06,1,0.0623000000
    1995-01-06,3,0.0641000000
    ...

Dates are ISO-8601, tenors are integer months, rates are continuously
compounded decimals. Rate columns are written with 10 decimal places and bps
columns with 2, so a write/read round trip preserves values to 1e-10.
"""

from __future__ import annotations

import csv
import json
import os
from datetime import date
from pathlib import Path
from typing import Any, Iterable, Sequence

from .curves import CurveHistory, SpotCurve
from .errors import ParseError

HISTORY_HEADER = ("date", "tenor_months", "rate_cc")

RATE_FORMAT = "{:.10f}"
BPS_FORMAT = "{:.2f}"


def load_history_csv(path: str | Path) -> CurveHistory:
    """Read a curve history CSV, validating schema and per-date tenor grids."""
    path = Path(path)
    by_date: dict[date, dict[int, float]] = {}
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise ParseError(f"{path}: file is empty")
        if tuple(h.strip() for h in header) != HISTORY_HEADER:
            raise ParseError(
                f"{path}: expected header {','.join(HISTORY_HEADER)}, "
                f"got {','.join(header)}"
            )
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 3:
                raise ParseError(f"{path}:{line_no}: expected 3 columns, got {len(row)}")
            try:
                day = date.fromisoformat(row[0].strip())
                months = int(row[1])
                rate = float(row[2])
            except ValueError as exc:
                raise ParseError(f"{path}:{line_no}: {exc}") from exc
            if months <= 0:
                raise ParseError(f"{path}:{line_no}: tenor_months must be positive")
            points = by_date.setdefault(day, {})
            if months in points:
                raise ParseError(
                    f"{path}:{line_no}: duplicate tenor {months}M for {day.isoformat()}"
                )
            points[months] = rate
    if not by_date:
        raise ParseError(f"{path}: no data rows")
    grids = {tuple(sorted(points)) for points in by_date.values()}
    if len(grids) != 1:
        raise ParseError(f"{path}: tenor grid differs across dates")
    months_grid = grids.pop()
    tenors = tuple(m / 12.0 for m in months_grid)
    entries = []
    for day in sorted(by_date):
        points = by_date[day]
        rates = tuple(points[m] for m in months_grid)
        try:
            entries.append(SpotCurve(day, tenors, rates))
        except ValueError as exc:
            raise ParseError(f"{path}: invalid curve for {day.isoformat()}: {exc}") from exc
    return CurveHistory(tuple(entries))


def write_history_csv(history: CurveHistory, path: str | Path) -> None:
    """Write a curve history in the schema `load_history_csv` reads."""
    months = []
    for t in history.tenor_grid:
        m = round(t * 12.0)
        if abs(t * 12.0 - m) > 1e-9 or m <= 0:
            raise ValueError(f"tenor {t} is not a whole number of months")
        months.append(m)
    rows = []
    for curve in history.entries:
        for m, rate in zip(months, curve.rates):
            rows.append((curve.as_of.isoformat(), str(m), RATE_FORMAT.format(rate)))
    write_rows_csv(path, HISTORY_HEADER, rows)


def write_rows_csv(
    path: str | Path, header: Sequence[str], rows: Iterable[Sequence[str]]
) -> None:
    """Write a CSV atomically (temp file + rename)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(list(header))
        writer.writerows(rows)
    os.replace(tmp, path)


def write_json(path: str | Path, payload: Any) -> None:
    """Write JSON atomically with stable key order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")
    os.replace(tmp, path)
