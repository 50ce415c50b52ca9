"""Run-directory persistence: run.csv, meta.json, snapshot files."""

from __future__ import annotations

import json
import os
from dataclasses import asdict

import numpy as np

from .integrator import RunRecord
from .snapshots import write_snapshot


def run_csv_text(record: RunRecord) -> str:
    lines = ["t,sup_norm,mass,energy,delta_E"]
    for t, s, m, e, d in zip(record.times, record.sup_norms, record.masses,
                             record.energies, record.delta_e):
        lines.append(f"{t:.17g},{s:.17g},{m:.17g},{e:.17g},{d:.17g}")
    return "\n".join(lines) + "\n"


def meta_dict(record: RunRecord, extra: dict | None = None) -> dict:
    ev = record.evolution
    meta = {
        "model": ev.model,
        "grid": {"Lx": ev.grid.Lx, "Ly": ev.grid.Ly, "Nx": ev.grid.Nx, "Ny": ev.grid.Ny},
        "T": ev.T,
        "Nt": ev.Nt,
        "dt": ev.dt,
        "scheme": ev.scheme,
        "fast_cutoff": ev.fast_cutoff,
        "dealias": ev.dealias,
        "drift_threshold": ev.drift_threshold,
        "overflow_threshold": ev.overflow_threshold,
        "sample_stride": ev.stride,
        "snapshot_times": list(ev.snapshot_times),
        "termination": asdict(record.termination),
        "final_time": float(record.times[-1]),
        "final_sup_norm": float(record.sup_norms[-1]),
        "mass_drift": record.mass_drift,
    }
    if extra:
        meta.update(extra)
    return meta


def write_run_dir(record: RunRecord, out_dir, extra_meta: dict | None = None) -> str:
    """Persist a RunRecord: run.csv, meta.json, snapshot_t*.cqnls files."""
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "run.csv"), "w") as fh:
        fh.write(run_csv_text(record))
    snap_files = []
    for t, field in record.snapshots:
        name = f"snapshot_t{t:g}.cqnls"
        write_snapshot(os.path.join(out_dir, name), field, t)
        snap_files.append(name)
    meta = meta_dict(record, extra_meta)
    meta["snapshots"] = snap_files
    with open(os.path.join(out_dir, "meta.json"), "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return str(out_dir)


def read_run_csv(path) -> dict[str, np.ndarray]:
    """Load run.csv columns into arrays keyed by header name."""
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    if data.size == 0:
        return {name: np.empty(0) for name in header}
    return {name: data[:, i] for i, name in enumerate(header)}
