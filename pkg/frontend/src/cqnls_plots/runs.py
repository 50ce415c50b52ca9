"""Readers for the CSV/JSON artifacts a run directory contains."""

from __future__ import annotations

import csv
import json
import os
from glob import glob

import numpy as np


def read_table(path) -> dict[str, np.ndarray]:
    """Load a headed CSV into float arrays keyed by column name."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) if v else np.nan for v in row] for row in reader]
    data = np.asarray(rows, dtype=float).reshape(len(rows), len(header))
    return {name: data[:, i] for i, name in enumerate(header)}


def read_verdict(path) -> dict:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        row = next(reader)
    out: dict = dict(row)
    for key in ("anisotropy", "omega_star", "residual"):
        out[key] = float(row[key]) if row.get(key) else None
    out["peak_count"] = int(row["peak_count"])
    return out


def read_meta(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def find_snapshots(run_dir) -> list[str]:
    return sorted(glob(os.path.join(run_dir, "*.cqnls")))


def latest_snapshot(run_dir) -> str:
    snaps = find_snapshots(run_dir)
    if not snaps:
        raise FileNotFoundError(f"no .cqnls snapshots in {run_dir}")
    return snaps[-1]
