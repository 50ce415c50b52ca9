"""The five figure kinds rendered from on-disk run artifacts.

surface      3D surface of |u| from a snapshot
contour      filled contours of |u| from a snapshot
timeseries   sup-norm (and energy-drift) history from run.csv
curve        mass/energy/amplitude versus frequency from a curves CSV
fit-overlay  |u| along x through the peak with the fitted soliton profile

Every renderer takes a run directory and writes one image; axes carry the
t, x, y, |u| labelling of the underlying quantities.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .runs import latest_snapshot, read_table, read_verdict  # noqa: E402
from .snapshots import read_snapshot  # noqa: E402

KINDS = ("surface", "contour", "timeseries", "curve", "fit-overlay")


def soliton_profile(omega: float, x: np.ndarray) -> np.ndarray:
    """Closed-form cubic-quintic line-soliton profile (for overlays)."""
    A = 1.0 / (4.0 * omega)
    B = np.sqrt(1.0 / (16.0 * omega**2) - 1.0 / (3.0 * omega))
    return (A + B * np.cosh(2.0 * np.sqrt(omega) * x)) ** -0.5


def _snapshot_for(run_dir, snapshot=None):
    return read_snapshot(snapshot if snapshot else latest_snapshot(run_dir))


def render_surface(run_dir, out_path, snapshot=None) -> str:
    snap = _snapshot_for(run_dir, snapshot)
    X, Y = np.meshgrid(snap.x, snap.y, indexing="xy")
    fig = plt.figure(figsize=(7.5, 5.5))
    ax = fig.add_subplot(projection="3d")
    ax.plot_surface(X, Y, np.abs(snap.values), cmap="viridis",
                    rcount=64, ccount=128, linewidth=0)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_zlabel("|u|")
    ax.set_title(f"|u| at t = {snap.t:g}")
    fig.tight_layout()
    fig.savefig(out_path, dpi=130)
    plt.close(fig)
    return out_path


def render_contour(run_dir, out_path, snapshot=None) -> str:
    snap = _snapshot_for(run_dir, snapshot)
    fig, ax = plt.subplots(figsize=(7.5, 4.5))
    cs = ax.contourf(snap.x, snap.y, np.abs(snap.values), levels=40, cmap="viridis")
    fig.colorbar(cs, ax=ax, label="|u|")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(f"|u| at t = {snap.t:g}")
    fig.tight_layout()
    fig.savefig(out_path, dpi=130)
    plt.close(fig)
    return out_path


def render_timeseries(run_dir, out_path) -> str:
    cols = read_table(os.path.join(run_dir, "run.csv"))
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7.5, 5.5), sharex=True)
    ax1.plot(cols["t"], cols["sup_norm"], color="tab:blue")
    ax1.set_ylabel(r"$\|u\|_\infty$")
    ax2.semilogy(cols["t"], np.maximum(cols["delta_E"], 1e-18), color="tab:red")
    ax2.set_ylabel(r"$\Delta_E$")
    ax2.set_xlabel("t")
    fig.suptitle("sup norm and relative energy drift")
    fig.tight_layout()
    fig.savefig(out_path, dpi=130)
    plt.close(fig)
    return out_path


def render_curve(run_dir, out_path, curves="curves.csv") -> str:
    cols = read_table(os.path.join(run_dir, curves))
    fig, axes = plt.subplots(1, 2, figsize=(9.5, 4.0))
    axes[0].plot(cols["omega"], cols["mass"], "o-", color="tab:blue")
    axes[0].set_xlabel(r"$\omega$")
    axes[0].set_ylabel("mass")
    axes[1].plot(cols["omega"], cols["energy"], "o-", color="tab:red")
    axes[1].set_xlabel(r"$\omega$")
    axes[1].set_ylabel("energy")
    fig.suptitle("ground-state curves")
    fig.tight_layout()
    fig.savefig(out_path, dpi=130)
    plt.close(fig)
    return out_path


def render_fit_overlay(run_dir, out_path, snapshot=None) -> str:
    snap = _snapshot_for(run_dir, snapshot)
    verdict = read_verdict(os.path.join(run_dir, "verdict.csv"))
    absu = np.abs(snap.values)
    iy, ix = np.unravel_index(int(absu.argmax()), absu.shape)
    period = 2 * np.pi * snap.Lx
    xs = (snap.x - snap.x[ix] + period / 2) % period - period / 2
    order = np.argsort(xs)
    fig, ax = plt.subplots(figsize=(7.5, 4.2))
    ax.plot(xs[order], absu[iy, order], color="tab:blue", label="|u|")
    omega_star = verdict.get("omega_star")
    if omega_star:
        ax.plot(xs[order], soliton_profile(omega_star, xs[order]), color="tab:green",
                label=rf"fitted profile, $\omega_*$ = {omega_star:.4f}")
    ax.set_xlabel("x")
    ax.set_ylabel("|u|")
    ax.set_title(f"slice through the peak at t = {snap.t:g}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=130)
    plt.close(fig)
    return out_path


def render(kind: str, run_dir, out_path, snapshot=None) -> str:
    if kind == "surface":
        return render_surface(run_dir, out_path, snapshot)
    if kind == "contour":
        return render_contour(run_dir, out_path, snapshot)
    if kind == "timeseries":
        return render_timeseries(run_dir, out_path)
    if kind == "curve":
        return render_curve(run_dir, out_path)
    if kind == "fit-overlay":
        return render_fit_overlay(run_dir, out_path, snapshot)
    raise ValueError(f"unknown plot kind {kind!r}; expected one of {KINDS}")
