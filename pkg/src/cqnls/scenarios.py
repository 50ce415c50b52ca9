"""Scenario registry: the full set of reproducible experiment runs.

Every entry fixes the model, initial condition, domain, and resolution of
one study, together with an expectation block that run_scenario() checks
after the run.  Long runs also have "-desk" variants with Nx and Nt cut
4x (and, where noted, a shorter horizon) and correspondingly loosened
expectations, sized for interactive use and the default test suite.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .diagnostics import classify_final_state, fit_line_soliton, write_verdict_csv
from .errors import FitImpossibleError, InvalidConfigError
from .grid import Field, make_grid
from .groundstate import embed_radial, refine_on_grid, solve_ground_state
from .integrator import Evolution, RunRecord, evolve
from .profiles import (
    CUBIC,
    CUBIC_QUINTIC,
    GAUSSIAN_PERTURBED,
    GROUND_STATE_EMBED,
    PERIODIC_DEFORMATION,
    PLAIN_LINE_SOLITON,
    InitialCondition,
    SolitonProfile1D,
    build_initial_condition,
)
from . import runio


@dataclass(frozen=True)
class Expectation:
    """Checkable claims about a finished run; None means "not checked"."""

    completes: Optional[bool] = None
    stop_window: Optional[tuple[float, float]] = None
    min_sup_at_stop: Optional[float] = None
    peak_count: Optional[int] = None
    classification: Optional[str] = None
    omega_star_window: Optional[tuple[float, float]] = None
    fit_time: Optional[float] = None      # fit at this snapshot; default: final state
    final_error_tol: Optional[float] = None   # max |u(T) - u0 e^{i w T}|
    delta_e_max: Optional[float] = None
    final_sup_window: Optional[tuple[float, float]] = None
    jump_window: Optional[tuple[float, float]] = None  # sup-norm jump time range


@dataclass(frozen=True)
class Scenario:
    id: str
    model: str
    omega: float
    ic_kind: str
    lam: float
    Lx: float
    Ly: float
    Nx: int
    Ny: int
    Nt: int
    T: float
    snapshot_times: tuple = ()
    expect: Expectation = field(default_factory=Expectation)
    runtime_class: str = "seconds"
    notes: str = ""
    sample_stride: Optional[int] = None  # None: every max(1, Nt/1000) steps
    desk_T: Optional[float] = None
    desk_Nt: Optional[int] = None  # when the default Nt/4 rule loses too much accuracy
    desk_expect: Optional[Expectation] = None

    def describe(self) -> str:
        return (f"{self.id}: {self.model}, omega={self.omega}, ic={self.ic_kind}, "
                f"lambda={self.lam}, Lx={self.Lx}, Ly={self.Ly}, "
                f"Nx={self.Nx}, Ny={self.Ny}, Nt={self.Nt}, T={self.T} "
                f"[{self.runtime_class}]")


def _desk_variant(s: Scenario) -> Scenario:
    """Quarter the x-resolution and the step count; shorten T if configured."""
    T = s.desk_T if s.desk_T is not None else s.T
    scale = T / s.T
    if s.desk_Nt is not None:
        Nt = s.desk_Nt
    else:
        Nt = max(100, int(round(s.Nt * scale)) // 4)
    expect = s.desk_expect if s.desk_expect is not None else s.expect
    return replace(
        s,
        id=s.id + "-desk",
        Nx=max(256, s.Nx // 4),
        Nt=Nt,
        T=T,
        snapshot_times=tuple(t for t in s.snapshot_times if t <= T),
        expect=expect,
        runtime_class="seconds" if s.runtime_class == "minutes" else "minutes",
        notes=(s.notes + " " if s.notes else "") + "(desk-scale variant)",
        desk_T=None,
        desk_Nt=None,
        desk_expect=None,
    )


def _base_scenarios() -> list[Scenario]:
    rows: list[Scenario] = []

    # -- validation pair -------------------------------------------------
    rows.append(Scenario(
        id="validate-line-soliton",
        model=CUBIC_QUINTIC, omega=0.1, ic_kind=PLAIN_LINE_SOLITON, lam=0.0,
        Lx=40, Ly=3, Nx=2**10, Ny=2**5, Nt=10**3, T=1.0,
        expect=Expectation(completes=True, final_error_tol=1e-12, delta_e_max=1e-12),
        runtime_class="seconds",
        notes="line soliton propagated one time unit; machine-precision check",
    ))
    rows.append(Scenario(
        id="validate-ground-state",
        model=CUBIC_QUINTIC, omega=0.1, ic_kind=GROUND_STATE_EMBED, lam=0.0,
        Lx=10, Ly=10, Nx=2**8, Ny=2**8, Nt=10**4, T=1.0,
        expect=Expectation(completes=True, final_error_tol=1e-8),
        runtime_class="minutes",
        notes="radial lump propagated one time unit; exercises y-dependence",
    ))

    # -- cubic model, Gaussian perturbations -----------------------------
    for sign, tag in ((+1, "plus"), (-1, "minus")):
        lam = sign * math.sqrt(2 * 0.04) / 10.0
        rows.append(Scenario(
            id=f"cubic-gauss-small-{tag}",
            model=CUBIC, omega=0.04, ic_kind=GAUSSIAN_PERTURBED, lam=lam,
            Lx=100, Ly=2, Nx=2**12, Ny=2**7, Nt=10**4, T=100.0,
            expect=Expectation(completes=True, classification="line-soliton-retained"),
            runtime_class="minutes",
            notes="subcritical mass: perturbed line soliton survives",
        ))
    rows.append(Scenario(
        id="cubic-blowup-plus",
        model=CUBIC, omega=1.0, ic_kind=GAUSSIAN_PERTURBED, lam=math.sqrt(2.0) / 10.0,
        Lx=100, Ly=2, Nx=2**12, Ny=2**7, Nt=10**4, T=100.0,
        expect=Expectation(completes=False, stop_window=(2.0, 2.7), min_sup_at_stop=30.0),
        runtime_class="minutes",
        notes="supercritical mass: single focusing peak, run stops on energy drift",
    ))
    rows.append(Scenario(
        id="cubic-blowup-minus",
        model=CUBIC, omega=1.0, ic_kind=GAUSSIAN_PERTURBED, lam=-math.sqrt(2.0) / 10.0,
        Lx=100, Ly=2, Nx=2**12, Ny=2**7, Nt=10**4, T=100.0,
        expect=Expectation(completes=False, stop_window=(2.7, 3.6), peak_count=2),
        runtime_class="minutes",
        notes="supercritical mass with a dip: two separated focusing peaks",
    ))

    # -- cubic-quintic, stable regime (Ly = 2) ---------------------------
    rows.append(Scenario(
        id="stable-Ly2-plus",
        model=CUBIC_QUINTIC, omega=0.1, ic_kind=GAUSSIAN_PERTURBED, lam=0.05,
        Lx=40, Ly=2, Nx=2**10, Ny=2**7, Nt=10**3, T=20.0,
        snapshot_times=(5.0, 20.0),
        expect=Expectation(completes=True, classification="line-soliton-retained",
                           omega_star_window=(0.1007, 0.1027), fit_time=5.0),
        runtime_class="minutes",
        notes="2D mass below the lump mass: soliton relaxes to a nearby frequency",
    ))
    rows.append(Scenario(
        id="stable-Ly2-minus",
        model=CUBIC_QUINTIC, omega=0.1, ic_kind=GAUSSIAN_PERTURBED, lam=-0.05,
        Lx=40, Ly=2, Nx=2**10, Ny=2**7, Nt=10**3, T=20.0,
        snapshot_times=(5.0, 20.0),
        expect=Expectation(completes=True, classification="line-soliton-retained",
                           omega_star_window=(0.0994, 0.1014), fit_time=20.0),
        runtime_class="minutes",
        notes="mass-reducing perturbation: still stable, smaller radiation",
    ))

    # -- cubic-quintic, unstable regime (Ly = 3) -------------------------
    unstable_desk = Expectation(completes=True, classification="lump-formed",
                                final_sup_window=(0.5, 1.0))
    for sign, tag in ((+1, "plus"), (-1, "minus")):
        rows.append(Scenario(
            id=f"unstable-Ly3-{tag}",
            model=CUBIC_QUINTIC, omega=0.1, ic_kind=GAUSSIAN_PERTURBED, lam=sign * 0.05,
            Lx=150, Ly=3, Nx=2**12, Ny=2**7, Nt=5 * 10**4, T=500.0,
            snapshot_times=(500.0,),
            expect=Expectation(completes=True, classification="lump-formed"),
            runtime_class="hours",
            notes="2D mass exceeds the lump mass: transverse instability forms a lump",
            desk_expect=unstable_desk,
        ))

    # -- frequency dependence at omega = 0.18 ----------------------------
    freq_desk = Expectation(completes=True, classification="line-soliton-retained",
                            omega_star_window=(0.1795, 0.1820))
    for Ly in (3, 5):
        for sign, tag in ((+1, "plus"), (-1, "minus")):
            win = (0.1799, 0.1819) if sign > 0 else (0.1795, 0.1815)
            rows.append(Scenario(
                id=f"freq018-Ly{Ly}-{tag}",
                model=CUBIC_QUINTIC, omega=0.18, ic_kind=GAUSSIAN_PERTURBED,
                lam=sign * 0.077,
                Lx=150, Ly=Ly, Nx=2**12, Ny=2**7, Nt=2 * 10**4, T=1000.0,
                snapshot_times=(1000.0,),
                expect=Expectation(completes=True, omega_star_window=win)
                if Ly == 3 else Expectation(completes=True),
                runtime_class="hours",
                notes=("near the upper frequency limit the soliton stays stable "
                       "on this torus" if Ly == 3 else
                       "larger torus: slow oscillation toward a lump-like state"),
                desk_T=200.0,
                desk_Nt=2000,
                desk_expect=freq_desk if Ly == 3 else Expectation(completes=True),
            ))

    # -- periodic deformations -------------------------------------------
    rows.append(Scenario(
        id="deform-cubic-small",
        model=CUBIC, omega=0.04, ic_kind=PERIODIC_DEFORMATION, lam=0.8,
        Lx=100, Ly=2, Nx=2**12, Ny=2**7, Nt=10**4, T=100.0,
        expect=Expectation(completes=True, classification="line-soliton-retained"),
        runtime_class="minutes",
        notes="subcritical deformed line soliton oscillates without focusing",
    ))
    rows.append(Scenario(
        id="deform-cubic-large",
        model=CUBIC, omega=1.0, ic_kind=PERIODIC_DEFORMATION, lam=0.8,
        Lx=10, Ly=2, Nx=2**12, Ny=2**7, Nt=10**4, T=100.0,
        expect=Expectation(completes=False, stop_window=(5.0, 60.0)),
        runtime_class="minutes",
        notes=("supercritical deformed line soliton; a pure bending deformation "
               "couples to the focusing channel only at second order, so the "
               "collapse develops on a slow time scale before the run stops"),
        desk_expect=Expectation(completes=False, stop_window=(5.0, 80.0)),
    ))
    rows.append(Scenario(
        id="deform-cq-Ly2",
        model=CUBIC_QUINTIC, omega=0.1, ic_kind=PERIODIC_DEFORMATION, lam=0.8,
        Lx=150, Ly=2, Nx=2**12, Ny=2**6, Nt=10**4, T=1000.0,
        expect=Expectation(completes=True),
        runtime_class="hours",
        notes="deformed line soliton below the critical torus length stays a line",
        desk_T=500.0,
        desk_Nt=4000,
        desk_expect=Expectation(completes=True),
    ))
    rows.append(Scenario(
        id="deform-cq-Ly3",
        model=CUBIC_QUINTIC, omega=0.1, ic_kind=PERIODIC_DEFORMATION, lam=0.8,
        Lx=150, Ly=3, Nx=2**12, Ny=2**6, Nt=10**4, T=1000.0,
        expect=Expectation(completes=True, jump_window=(250.0, 420.0)),
        runtime_class="hours",
        notes="above the critical torus length the sup norm jumps to the lump branch",
        desk_T=500.0,
        desk_Nt=4000,
        desk_expect=Expectation(completes=True, jump_window=(200.0, 500.0)),
    ))
    return rows


def registry() -> list[Scenario]:
    """All scenarios, including auto-generated desk variants of long runs."""
    rows = _base_scenarios()
    desks = [_desk_variant(s) for s in rows if s.runtime_class in ("minutes", "hours")]
    out = rows + desks
    ids = [s.id for s in out]
    assert len(ids) == len(set(ids)), "scenario ids must be unique"
    return out


def get_scenario(scenario_id: str) -> Scenario:
    for s in registry():
        if s.id == scenario_id:
            return s
    raise InvalidConfigError(f"unknown scenario id {scenario_id!r}")


_OVERRIDE_KEYS = {"Nx", "Ny", "Nt", "T"}


def apply_overrides(s: Scenario, overrides: dict, unlock: bool = False) -> Scenario:
    if not overrides:
        return s
    bad = set(overrides) - _OVERRIDE_KEYS
    if bad and not unlock:
        raise InvalidConfigError(
            f"override(s) {sorted(bad)} change locked physics parameters; "
            "pass unlock to force")
    return replace(s, **overrides)


def build_scenario_initial_condition(s: Scenario, grid) -> Field:
    if s.ic_kind == GROUND_STATE_EMBED:
        corner = float(np.hypot(np.pi * s.Lx, np.pi * s.Ly))
        gs = solve_ground_state(s.model, s.omega,
                                R=max(30.0 / math.sqrt(s.omega), corner))
        emb = embed_radial(gs, grid)
        refined, _ = refine_on_grid(emb, s.model, s.omega)
        return refined
    profile = SolitonProfile1D(s.model, s.omega)
    ic = InitialCondition(s.ic_kind, profile=profile, lam=s.lam)
    return build_initial_condition(ic, grid)


def detect_jump_time(record: RunRecord, factor: float = 1.4) -> Optional[float]:
    """First sampled time at which the sup norm exceeds factor * its initial value."""
    threshold = factor * record.sup_norms[0]
    idx = np.nonzero(record.sup_norms > threshold)[0]
    if idx.size == 0:
        return None
    return float(record.times[idx[0]])


@dataclass
class ScenarioResult:
    scenario: Scenario
    record: RunRecord
    checks: list  # (name, passed: bool, detail)
    out_dir: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def report(self) -> str:
        lines = [f"scenario {self.scenario.id}: "
                 f"termination={self.record.termination.status} "
                 f"t_final={self.record.times[-1]:g}"]
        for name, ok, detail in self.checks:
            lines.append(f"  [{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        if not self.checks:
            lines.append("  (no expectations recorded)")
        return "\n".join(lines)


def evaluate_expectations(s: Scenario, record: RunRecord, u0: Field) -> list:
    e = s.expect
    checks = []
    term = record.termination
    if e.completes is not None:
        ok = term.stopped_early != e.completes
        checks.append(("completes", ok, f"termination={term.status}"))
    if e.stop_window is not None:
        lo, hi = e.stop_window
        ok = term.stopped_early and term.time is not None and lo <= term.time <= hi
        checks.append(("stop-window", ok,
                       f"stop at t={term.time} expected in [{lo}, {hi}]"))
    if e.min_sup_at_stop is not None:
        ok = record.sup_norms[-1] >= e.min_sup_at_stop
        checks.append(("sup-at-stop", ok,
                       f"sup={record.sup_norms[-1]:.3g} >= {e.min_sup_at_stop}"))
    if e.final_error_tol is not None:
        exact = u0.values * np.exp(1j * s.omega * record.times[-1])
        err = float(np.abs(record.final_field.values - exact).max())
        checks.append(("final-error", err <= e.final_error_tol,
                       f"max error {err:.3e} <= {e.final_error_tol:g}"))
    if e.delta_e_max is not None:
        d = float(record.delta_e.max())
        checks.append(("energy-drift", d <= e.delta_e_max,
                       f"max delta_E {d:.3e} <= {e.delta_e_max:g}"))
    verdict = classify_final_state(record)
    if e.classification is not None:
        checks.append(("classification", verdict.classification == e.classification,
                       f"got {verdict.classification}, expected {e.classification}"))
    if e.peak_count is not None:
        checks.append(("peak-count", verdict.peak_count == e.peak_count,
                       f"got {verdict.peak_count}, expected {e.peak_count}"))
    if e.omega_star_window is not None:
        lo, hi = e.omega_star_window
        fit_field = record.final_field
        if e.fit_time is not None:
            for t, snap in record.snapshots:
                if abs(t - e.fit_time) < 1e-9:
                    fit_field = snap
                    break
        try:
            fit = fit_line_soliton(fit_field, model=s.model)
            ok = lo <= fit.omega_star <= hi
            detail = f"omega*={fit.omega_star:.4f} expected in [{lo}, {hi}]"
        except FitImpossibleError as exc:
            ok, detail = False, f"fit impossible: {exc}"
        checks.append(("omega-star", ok, detail))
    if e.final_sup_window is not None:
        lo, hi = e.final_sup_window
        sup = float(record.sup_norms[-1])
        checks.append(("final-sup", lo <= sup <= hi,
                       f"final sup {sup:.3f} expected in [{lo}, {hi}]"))
    if e.jump_window is not None:
        lo, hi = e.jump_window
        tj = detect_jump_time(record)
        ok = tj is not None and lo <= tj <= hi
        checks.append(("sup-jump", ok, f"jump at t={tj} expected in [{lo}, {hi}]"))
    return checks


def _scenario_meta(s: Scenario) -> dict:
    return {
        "scenario": s.id,
        "omega": s.omega,
        "ic_kind": s.ic_kind,
        "lambda": s.lam,
        "notes": s.notes,
    }


def run_scenario(scenario_id: str, out_dir=None, overrides: dict | None = None,
                 unlock: bool = False, verbose: bool = True) -> ScenarioResult:
    """Build, evolve, persist, and check one registry scenario."""
    s = apply_overrides(get_scenario(scenario_id), overrides or {}, unlock=unlock)
    grid = make_grid(s.Lx, s.Ly, s.Nx, s.Ny)
    u0 = build_scenario_initial_condition(s, grid)
    snap_times = tuple(s.snapshot_times) + ((s.T,) if s.T not in s.snapshot_times else ())
    ev = Evolution(model=s.model, grid=grid, T=s.T, Nt=s.Nt, snapshot_times=snap_times,
                   sample_stride=s.sample_stride)
    if out_dir is not None:
        # echo the full configuration to disk before stepping, so even an
        # interrupted run leaves a self-describing directory
        os.makedirs(out_dir, exist_ok=True)
        config_echo = dict(_scenario_meta(s),
                           grid={"Lx": s.Lx, "Ly": s.Ly, "Nx": s.Nx, "Ny": s.Ny},
                           T=s.T, Nt=s.Nt, status="running")
        with open(os.path.join(out_dir, "meta.json"), "w") as fh:
            json.dump(config_echo, fh, indent=2, sort_keys=True)
            fh.write("\n")
    record = evolve(u0, ev)
    checks = evaluate_expectations(s, record, u0)

    if out_dir is not None:
        meta = dict(_scenario_meta(s))
        meta["checks"] = [{"name": n, "passed": bool(ok), "detail": d} for n, ok, d in checks]
        runio.write_run_dir(record, out_dir, extra_meta=meta)
        write_verdict_csv(classify_final_state(record), os.path.join(out_dir, "verdict.csv"))

    result = ScenarioResult(s, record, checks, str(out_dir) if out_dir else None)
    if verbose:
        print(result.report())
    return result
