"""Command-line entry points.

Exit codes: 0 success / expectations met, 1 expectation failure,
2 configuration error, 3 numerical divergence in a run that expected none.
The FFT worker count can be pinned with the CQNLS_THREADS environment
variable.
"""

from __future__ import annotations

import argparse
import configparser
import os
import sys

import numpy as np

from . import runio
from .diagnostics import classify_final_state, critical_torus_length, fit_line_soliton, write_verdict_csv
from .errors import CQNLSError, FitImpossibleError, InvalidConfigError
from .grid import make_grid
from .groundstate import export_curves_csv, export_profile_csv, ground_state_curves, solve_ground_state
from .integrator import Evolution, evolve
from .profiles import (
    CUBIC_QUINTIC,
    InitialCondition,
    SolitonProfile1D,
    build_initial_condition,
    energy_1d,
    mass_1d,
)
from .scenarios import get_scenario, registry, run_scenario
from .snapshots import read_snapshot

EXIT_OK = 0
EXIT_EXPECTATION = 1
EXIT_CONFIG = 2
EXIT_DIVERGED = 3


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cqnls",
                                description="Pseudo-spectral waveguide NLS toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a simulation described by a config file")
    sim.add_argument("config", help="INI-style configuration file")
    sim.add_argument("--out", default=None, help="output directory (overrides file)")
    for flag, typ in (("--omega", float), ("--lambda", float), ("--Lx", float),
                      ("--Ly", float), ("--Nx", int), ("--Ny", int),
                      ("--Nt", int), ("--T", float)):
        sim.add_argument(flag, dest=flag.lstrip("-"), type=typ, default=None,
                         help=f"override [{flag.lstrip('-')}] from the file")

    gst = sub.add_parser("groundstate", help="solve a radial ground state")
    gst.add_argument("--model", default=CUBIC_QUINTIC)
    gst.add_argument("--omega", type=float, required=True)
    gst.add_argument("--radius", type=float, default=None)
    gst.add_argument("--nodes", type=int, default=2048)
    gst.add_argument("--out", default=None, help="CSV path for the radial profile")

    crv = sub.add_parser("profile-curves",
                         help="mass/energy/amplitude curves of the soliton families")
    crv.add_argument("--model", default=CUBIC_QUINTIC)
    crv.add_argument("--omegas", default="0.02:0.18:17",
                     help="sweep as start:stop:count")
    crv.add_argument("--ground-state", action="store_true",
                     help="sweep the 2D ground states instead of the 1D family")
    crv.add_argument("--out", default=None, help="CSV output path")

    fit = sub.add_parser("fit", help="fit a snapshot to the soliton family")
    fit.add_argument("snapshot", help="snapshot file")
    fit.add_argument("--model", default=CUBIC_QUINTIC)

    rep = sub.add_parser("reproduce", help="run a registry scenario")
    rep.add_argument("id", help="scenario id (see list-scenarios)")
    rep.add_argument("--out", default=None, help="artifact directory")
    rep.add_argument("--nx", type=int, default=None)
    rep.add_argument("--ny", type=int, default=None)
    rep.add_argument("--nt", type=int, default=None)
    rep.add_argument("--T", type=float, default=None)
    rep.add_argument("--desk", action="store_true",
                     help="run the reduced-resolution desk variant")
    rep.add_argument("--unlock", action="store_true",
                     help="allow overrides beyond resolution and horizon")

    sub.add_parser("list-scenarios", help="print the scenario registry")

    lcr = sub.add_parser("critical-length",
                         help="ground-state mass heuristic for the critical torus length")
    lcr.add_argument("--omega", type=float, required=True)
    return p


def _cmd_simulate(args) -> int:
    cp = configparser.ConfigParser()
    if not cp.read(args.config):
        print(f"cannot read config file {args.config}", file=sys.stderr)
        return EXIT_CONFIG

    def get(section, key, default=None, cast=float):
        cli_val = getattr(args, key, None)
        if cli_val is not None:
            return cli_val
        if cp.has_option(section, key):
            return cast(cp.get(section, key))
        if default is None:
            raise InvalidConfigError(f"missing [{section}] {key}")
        return default

    try:
        model = cp.get("model", "kind", fallback=CUBIC_QUINTIC)
        omega = get("model", "omega")
        Lx = get("domain", "Lx")
        Ly = get("domain", "Ly")
        Nx = get("domain", "Nx", cast=int)
        Ny = get("domain", "Ny", cast=int)
        T = get("time", "T")
        Nt = get("time", "Nt", cast=int)
        kind = cp.get("initial", "kind", fallback="plain-line-soliton")
        lam = args.__dict__.get("lambda") if args.__dict__.get("lambda") is not None \
            else cp.getfloat("initial", "lambda", fallback=0.0)
        out = args.out or cp.get("output", "dir", fallback="cqnls-run")
        snaps = cp.get("output", "snapshots", fallback="")
        snapshot_times = tuple(float(s) for s in snaps.replace(",", " ").split()) if snaps else ()
        drift = cp.getfloat("stop", "drift_threshold", fallback=1e-3)

        grid = make_grid(Lx, Ly, Nx, Ny)
        if kind == "ground-state-embed":
            import numpy as _np

            from .groundstate import embed_radial, refine_on_grid, solve_ground_state

            corner = float(_np.hypot(_np.pi * Lx, _np.pi * Ly))
            gs = solve_ground_state(model, omega, R=max(30.0 / omega**0.5, corner))
            u0, _ = refine_on_grid(embed_radial(gs, grid), model, omega)
        else:
            ic = InitialCondition(kind, profile=SolitonProfile1D(model, omega), lam=lam)
            u0 = build_initial_condition(ic, grid)
        ev = Evolution(model=model, grid=grid, T=T, Nt=Nt,
                       snapshot_times=snapshot_times, drift_threshold=drift)
    except (CQNLSError, ValueError, configparser.Error) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    record = evolve(u0, ev)
    runio.write_run_dir(record, out)
    write_verdict_csv(classify_final_state(record), os.path.join(out, "verdict.csv"))
    print(f"run finished: termination={record.termination.status} "
          f"t={record.times[-1]:g} sup={record.sup_norms[-1]:.4g} -> {out}")
    return EXIT_OK


def _cmd_groundstate(args) -> int:
    gs = solve_ground_state(args.model, args.omega, R=args.radius, N=args.nodes)
    print(f"omega={gs.omega} mass={gs.mass:.6f} energy={gs.energy:.6f} "
          f"amplitude={gs.amplitude:.6f} residual={gs.residual_norm:.3e}")
    if args.out:
        export_profile_csv(gs, args.out)
        print(f"radial profile written to {args.out}")
    return EXIT_OK


def _cmd_profile_curves(args) -> int:
    try:
        start, stop, count = args.omegas.split(":")
        omegas = np.linspace(float(start), float(stop), int(count))
    except ValueError:
        print("`--omegas` must be start:stop:count", file=sys.stderr)
        return EXIT_CONFIG
    if args.ground_state:
        rows = ground_state_curves(args.model, omegas)
        if args.out:
            export_curves_csv(rows, args.out)
        for p in rows:
            print(f"omega={p.omega:.4f} M={p.mass:.6g} E={p.energy:.6g} "
                  f"amp={p.amplitude:.6g} converged={p.converged}")
        return EXIT_OK
    lines = ["omega,mass,energy,amplitude"]
    for w in omegas:
        prof = SolitonProfile1D(args.model, float(w))
        lines.append(f"{w:.17g},{mass_1d(prof):.17g},{energy_1d(prof):.17g},"
                     f"{prof.amplitude():.17g}")
        print(lines[-1])
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_fit(args) -> int:
    try:
        field, t = read_snapshot(args.snapshot)
    except (FileNotFoundError, OSError) as exc:
        print(f"cannot read snapshot: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        fit = fit_line_soliton(field, model=args.model)
    except FitImpossibleError as exc:
        print(f"fit impossible: {exc}", file=sys.stderr)
        return EXIT_EXPECTATION
    print(f"t={t:g} omega*={fit.omega_star:.6f} amplitude={fit.fit_amplitude:.6f} "
          f"residual={fit.residual:.3e}")
    return EXIT_OK


def _cmd_reproduce(args) -> int:
    sid = args.id + "-desk" if args.desk and not args.id.endswith("-desk") else args.id
    overrides = {}
    for src, dst in (("nx", "Nx"), ("ny", "Ny"), ("nt", "Nt"), ("T", "T")):
        v = getattr(args, src)
        if v is not None:
            overrides[dst] = v
    result = run_scenario(sid, out_dir=args.out, overrides=overrides, unlock=args.unlock)
    if result.passed:
        return EXIT_OK
    expected_completion = result.scenario.expect.completes
    if expected_completion and result.record.termination.stopped_early:
        return EXIT_DIVERGED
    return EXIT_EXPECTATION


def _cmd_list(_args) -> int:
    for s in registry():
        print(s.describe())
        if s.notes:
            print(f"    {s.notes}")
    return EXIT_OK


def _cmd_critical_length(args) -> int:
    lc = critical_torus_length(args.omega)
    print(f"L_crit({args.omega}) = {lc:.4f}")
    return EXIT_OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    handlers = {
        "simulate": _cmd_simulate,
        "groundstate": _cmd_groundstate,
        "profile-curves": _cmd_profile_curves,
        "fit": _cmd_fit,
        "reproduce": _cmd_reproduce,
        "list-scenarios": _cmd_list,
        "critical-length": _cmd_critical_length,
    }
    try:
        return handlers[args.command](args)
    except CQNLSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
