"""Schema-checked readers for the keyrate CSV interfaces."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

REGION_COLUMNS = (
    "scheme",
    "rho1",
    "beta1",
    "beta2",
    "lambda1",
    "lambda2",
    "s1",
    "s2",
    "r1",
    "r2",
    "on_frontier",
)

HULL_COLUMNS = ("r1", "r2")

NEMAP_COLUMNS = (
    "alpha1",
    "alpha2",
    "ne_fwfw",
    "ne_fwbw",
    "ne_bwfw",
    "ne_bwbw",
    "analytic_class",
    "agree",
)


class SchemaError(ValueError):
    """Input file does not match a published CSV schema."""


def _read_rows(path: str | Path, expected: tuple[str, ...]) -> list[dict]:
    path = Path(path)
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = tuple(reader.fieldnames or ())
        missing = [col for col in expected if col not in header]
        if missing:
            raise SchemaError(f"{path}: missing column(s) {', '.join(missing)}")
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def read_region_csv(path: str | Path) -> list[dict]:
    """Rows of a region points/frontier file (full 11-column schema)."""
    return _read_rows(path, REGION_COLUMNS)


def read_hull_csv(path: str | Path) -> np.ndarray:
    """Hull vertex list as an (n, 2) float array."""
    rows = _read_rows(path, HULL_COLUMNS)
    return np.array([[float(r["r1"]), float(r["r2"])] for r in rows])


def read_nemap_csv(path: str | Path) -> list[dict]:
    """Rows of an equilibrium-map file."""
    return _read_rows(path, NEMAP_COLUMNS)


def sniff_kind(path: str | Path) -> str:
    """Classify a CSV by header: 'region', 'hull', or 'nemap'."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        header = tuple(next(csv.reader(fh), ()))
    if header == HULL_COLUMNS:
        return "hull"
    if set(REGION_COLUMNS) <= set(header):
        return "region"
    if set(NEMAP_COLUMNS) <= set(header):
        return "nemap"
    raise SchemaError(f"{path}: header {header} matches no known schema")
