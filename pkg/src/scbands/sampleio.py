"""CSV and JSON interchange for samples, bands, and experiment reports.

Sample CSV layout: one header row of grid coordinates, then one row per
observed function. Curves write plain coordinate headers ("0", "0.25", ...);
surfaces write "x:y" pairs in row-major lattice order (y fastest). Floats
are rendered with repr-faithful precision, so write/read round-trips are
bitwise exact.
"""

import csv
import json

import numpy as np

from .bands import band_to_dict
from .fdata import FunctionalSample, Grid1D, Grid2D

__all__ = [
    "format_report_table",
    "read_sample",
    "write_sample",
    "write_band",
    "write_report_csv",
    "write_report_json",
]


def _fmt(x):
    return format(float(x), ".17g")


def write_sample(path, sample):
    """Write a functional sample to CSV (header = grid, one row per curve)."""
    grid = sample.grid
    if isinstance(grid, Grid2D):
        x, y = grid.lattice_coords()
        header = [f"{_fmt(a)}:{_fmt(b)}" for a, b in zip(x, y)]
    else:
        header = [_fmt(p) for p in grid.points]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in sample.values:
            writer.writerow([_fmt(v) for v in row])


def _parse_grid(header):
    if not header:
        raise ValueError("sample CSV has an empty header")
    if ":" in header[0]:
        pairs = []
        for cell in header:
            parts = cell.split(":")
            if len(parts) != 2:
                raise ValueError(f"malformed surface header cell {cell!r}")
            pairs.append((float(parts[0]), float(parts[1])))
        xs = np.array([p[0] for p in pairs])
        ys = np.array([p[1] for p in pairs])
        x_points = np.unique(xs)
        y_points = np.unique(ys)
        expect_x = np.repeat(x_points, y_points.size)
        expect_y = np.tile(y_points, x_points.size)
        if (
            xs.size != x_points.size * y_points.size
            or not np.array_equal(xs, expect_x)
            or not np.array_equal(ys, expect_y)
        ):
            raise ValueError(
                "surface header is not a row-major rectangular lattice"
            )
        return Grid2D(x_points, y_points)
    return Grid1D(np.array([float(cell) for cell in header]))


def read_sample(path):
    """Read a functional sample written by write_sample.

    Validates the header (monotone coordinates, rectangular lattice for
    surfaces), rejects ragged or non-finite rows, and reports the offending
    1-based row number on failure.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError("sample CSV is empty") from None
        grid = _parse_grid(header)
        rows = []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ValueError(
                    f"row {line_no} has {len(row)} values, expected {len(header)}"
                )
            try:
                rows.append([float(cell) for cell in row])
            except ValueError:
                raise ValueError(f"row {line_no} holds a non-numeric value") from None
    if not rows:
        raise ValueError("sample CSV holds no data rows")
    values = np.array(rows)
    if not np.all(np.isfinite(values)):
        bad = int(np.where(~np.isfinite(values).all(axis=1))[0][0]) + 2
        raise ValueError(f"row {bad} holds a non-finite value")
    return FunctionalSample(values, grid)


def write_band(path, band):
    """Write a confidence band as a JSON document."""
    with open(path, "w") as fh:
        json.dump(band_to_dict(band), fh, indent=2)
        fh.write("\n")


def write_report_json(path, report):
    with open(path, "w") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")


_COLUMNS = {
    "coverage": ["n", "method", "replications", "failures", "hits", "coverage", "se"],
    "width": ["n", "method", "replications", "failures", "mean_quantile", "two_se"],
}


def write_report_csv(path, report):
    """Flatten an experiment report's cells to CSV (one row per cell)."""
    kind = report.get("kind")
    if kind not in _COLUMNS:
        raise ValueError(f"unknown report kind {kind!r}")
    columns = _COLUMNS[kind]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for cell in report["cells"]:
            writer.writerow(
                ["" if cell[c] is None else cell[c] for c in columns]
            )


def format_report_table(report):
    """Render a report's cells as an aligned text table."""
    columns = _COLUMNS[report["kind"]]
    rows = [columns]
    for cell in report["cells"]:
        rendered = []
        for c in columns:
            v = cell[c]
            if v is None:
                rendered.append("-")
            elif isinstance(v, float):
                rendered.append(f"{v:.4f}")
            else:
                rendered.append(str(v))
        rows.append(rendered)
    widths = [max(len(r[i]) for r in rows) for i in range(len(columns))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in rows]
    return "\n".join(lines)
