"""Time-stepper and evolution-loop tests."""

import numpy as np
import pytest

from cqnls.errors import InvalidConfigError
from cqnls.grid import Field, fft2, ifft2, make_grid, transform
from cqnls.integrator import (
    COMPOSITE_RK4,
    SPLIT_STEP,
    CompositeRK4Stepper,
    Evolution,
    StrangSplitStepper,
    energy,
    evolve,
    make_stepper,
    nonlinear_coefficients,
    rhs,
)
from cqnls.profiles import InitialCondition, SolitonProfile1D, build_initial_condition
from cqnls.runio import run_csv_text


def soliton_field(g, omega=0.1, model="cubic-quintic", lam=0.0):
    p = SolitonProfile1D(model, omega)
    kind = "gaussian-perturbed" if lam else "plain-line-soliton"
    return build_initial_condition(InitialCondition(kind, profile=p, lam=lam), g)


class TestRHS:
    def test_zero_field(self):
        g = make_grid(1, 1, 16, 16)
        out = rhs("cubic-quintic", np.zeros(g.shape, complex), g)
        assert np.all(out == 0)

    def test_constant_field_dc_mode_only(self):
        g = make_grid(1, 1, 16, 16)
        c = 0.7
        fhat = fft2(np.full(g.shape, c, dtype=complex))
        out = rhs("cubic-quintic", fhat, g)
        # d/dt uhat at k=0 equals i(c^3 - c^5) * Nx * Ny; no other modes
        expected = 1j * (c**3 - c**5) * g.Nx * g.Ny
        assert out[0, 0] == pytest.approx(expected, rel=1e-12)
        out[0, 0] = 0
        assert np.abs(out).max() < 1e-10

    def test_soliton_eigenrelation(self):
        # d/dt of phi e^{iwt} at t=0 is i w phi
        g = make_grid(40, 3, 1024, 32)
        f = soliton_field(g)
        fhat = transform(f)
        out = rhs("cubic-quintic", fhat, g)
        err = np.abs(out - 1j * 0.1 * fhat).max() / np.abs(fhat).max()
        assert err < 1e-10

    def test_cubic_model_drops_quintic(self):
        assert nonlinear_coefficients("cubic") == (1.0, 0.0)
        g = make_grid(30, 2, 1024, 16)
        f = soliton_field(g, omega=0.5, model="cubic")
        fhat = transform(f)
        out = rhs("cubic", fhat, g)
        err = np.abs(out - 1j * 0.5 * fhat).max() / np.abs(fhat).max()
        assert err < 1e-10


class TestCompositeStepper:
    def test_linear_only_one_step_local_error(self):
        # nonlinearity disabled: one step vs the exact phase factor
        g = make_grid(2, 2, 32, 32)
        rng = np.random.default_rng(0)
        u = rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape)
        uhat = fft2(u)
        errs = []
        for dt in (2e-3, 1e-3, 5e-4):  # k2*dt stays below the fast cutoff
            stepper = CompositeRK4Stepper("linear", g, dt)
            got = stepper.step(uhat)
            exact = np.exp(-1j * g.k2 * dt) * uhat
            errs.append(np.abs(got - exact).max() / np.abs(uhat).max())
        # local error O(dt^5): halving dt divides the error by ~32
        assert errs[0] / errs[1] == pytest.approx(32, rel=0.2)
        assert errs[1] / errs[2] == pytest.approx(32, rel=0.2)

    def test_linear_fast_branch_is_exact(self):
        g = make_grid(1, 1, 32, 32)
        dt = 0.5  # k2*dt up to 256: almost everything in the stiff branch
        rng = np.random.default_rng(1)
        uhat = fft2(rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape))
        stepper = CompositeRK4Stepper("linear", g, dt)
        got = stepper.step(uhat)
        exact = np.exp(-1j * g.k2 * dt) * uhat
        fast = g.k2 * dt > 0.3
        assert np.abs((got - exact)[fast]).max() < 1e-12 * np.abs(uhat).max()

    def test_order_four_self_convergence(self):
        # smooth periodic data, every mode inside the explicit branch
        g = make_grid(4, 2, 32, 16)
        X, Y = g.meshgrid()
        u0 = Field(g, 0.45 * np.exp(1j * X / g.Lx) + 0.3 * np.cos(Y / g.Ly)
                   + 0.2 * np.exp(-0.5j * X / g.Lx + 1j * Y / g.Ly))
        T = 0.9
        sols = {}
        for nt in (100, 200, 400, 3200):
            ev = Evolution(model="cubic-quintic", grid=g, T=T, Nt=nt, fast_cutoff=0.3)
            assert (g.k2 * ev.dt).max() < 0.3  # stays in the RK4 branch
            sols[nt] = evolve(u0, ev).final_field.values
        e1 = np.abs(sols[100] - sols[3200]).max()
        e2 = np.abs(sols[200] - sols[3200]).max()
        e3 = np.abs(sols[400] - sols[3200]).max()
        assert e1 / e2 == pytest.approx(16, abs=3)
        assert e2 / e3 == pytest.approx(16, abs=4)

    def test_stiff_step_is_stable(self):
        # k2*dt far beyond the explicit stability limit must not blow up
        g = make_grid(1, 1, 64, 64)
        dt = 0.1  # max |z| = 2048*0.1 = 204.8
        f = Field(g, 0.5 * np.exp(-(g.meshgrid()[0] ** 2 + g.meshgrid()[1] ** 2)))
        ev = Evolution(model="cubic-quintic", grid=g, T=10 * dt, Nt=10)
        rec = evolve(f, ev)
        assert rec.termination.status == "completed"
        assert rec.sup_norms[-1] < 1.0


class TestSplitStepOracle:
    def test_constant_field_exact_rotation(self):
        g = make_grid(1, 1, 16, 16)
        c = 0.8
        stepper = StrangSplitStepper("cubic-quintic", g, dt=0.3)
        uhat = fft2(np.full(g.shape, c, complex))
        got = ifft2(stepper.step(uhat))
        exact = c * np.exp(1j * 0.3 * (c**2 - c**4))
        np.testing.assert_allclose(got, np.full(g.shape, exact), rtol=1e-13)

    def test_linear_only_exact(self):
        g = make_grid(1, 1, 32, 32)
        rng = np.random.default_rng(2)
        uhat = fft2(rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape))
        stepper = StrangSplitStepper("linear", g, dt=0.7)
        got = stepper.step(uhat)
        exact = np.exp(-1j * g.k2 * 0.7) * uhat
        assert np.abs(got - exact).max() < 1e-12 * np.abs(uhat).max()

    def test_oracle_agreement_on_soliton_propagation(self):
        # both schemes on the soliton test; agreement within the split-step
        # error bound (second order)
        g = make_grid(40, 3, 512, 16)
        u0 = soliton_field(g)
        recs = {}
        for scheme in (COMPOSITE_RK4, SPLIT_STEP):
            ev = Evolution(model="cubic-quintic", grid=g, T=1.0, Nt=2000, scheme=scheme)
            recs[scheme] = evolve(u0, ev).final_field.values
        diff = np.abs(recs[COMPOSITE_RK4] - recs[SPLIT_STEP]).max()
        assert diff < 1e-8

    def test_make_stepper_rejects_unknown_scheme(self):
        g = make_grid(1, 1, 16, 16)
        with pytest.raises(InvalidConfigError):
            make_stepper("verlet", "cubic", g, 0.1)


class TestEvolutionLoop:
    def test_config_validation(self):
        g = make_grid(1, 1, 16, 16)
        with pytest.raises(InvalidConfigError):
            Evolution(model="cubic-quintic", grid=g, T=0.0, Nt=10)
        with pytest.raises(InvalidConfigError):
            Evolution(model="cubic-quintic", grid=g, T=1.0, Nt=10, drift_threshold=2.0)
        with pytest.raises(InvalidConfigError):
            Evolution(model="quartic", grid=g, T=1.0, Nt=10)

    def test_grid_mismatch_rejected(self):
        g1 = make_grid(1, 1, 16, 16)
        g2 = make_grid(1, 1, 32, 16)
        ev = Evolution(model="cubic", grid=g2, T=1.0, Nt=10)
        with pytest.raises(InvalidConfigError):
            evolve(Field(g1, np.zeros(g1.shape, complex)), ev)

    def test_record_invariants_and_determinism(self):
        g = make_grid(4, 2, 64, 32)
        u0 = soliton_field(g, omega=0.12, lam=0.01)
        ev = Evolution(model="cubic-quintic", grid=g, T=0.5, Nt=100,
                       snapshot_times=(0.25, 0.2501, 0.5))
        rec1 = evolve(u0, ev)
        rec2 = evolve(u0, ev)
        assert rec1.delta_e[0] == 0.0
        assert np.all(np.diff(rec1.times) > 0)
        assert rec1.termination.status == "completed"
        # duplicate snapshot requests collapse to the nearest step once
        assert [t for t, _ in rec1.snapshots] == [0.25, 0.5]
        assert run_csv_text(rec1) == run_csv_text(rec2)

    def test_gauge_equivariance(self):
        g = make_grid(4, 2, 64, 32)
        u0 = soliton_field(g, omega=0.12, lam=0.02)
        ev = Evolution(model="cubic-quintic", grid=g, T=0.3, Nt=60)
        base = evolve(u0, ev).final_field.values
        theta = 0.83
        rot = evolve(Field(g, u0.values * np.exp(1j * theta)), ev).final_field.values
        assert np.abs(rot - base * np.exp(1j * theta)).max() < 1e-12

    def test_translation_equivariance(self):
        g = make_grid(4, 2, 64, 32)
        u0 = soliton_field(g, omega=0.12, lam=0.02)
        ev = Evolution(model="cubic-quintic", grid=g, T=0.3, Nt=60)
        base = evolve(u0, ev).final_field.values
        rolled = evolve(Field(g, np.roll(u0.values, 1, axis=0)), ev).final_field.values
        assert np.abs(rolled - np.roll(base, 1, axis=0)).max() < 1e-12

    def test_even_symmetry_preserved(self):
        g = make_grid(8, 2, 128, 32)
        u0 = soliton_field(g, omega=0.1, lam=0.03)
        ev = Evolution(model="cubic-quintic", grid=g, T=1.0, Nt=200)
        v = evolve(u0, ev).final_field.values
        iy = np.r_[0, np.arange(g.Ny - 1, 0, -1)]
        ix = np.r_[0, np.arange(g.Nx - 1, 0, -1)]
        assert np.abs(v - v[iy][:, ix]).max() < 1e-10

    def test_mass_drift_small_on_completed_run(self):
        g = make_grid(8, 2, 128, 32)
        u0 = soliton_field(g, omega=0.1, lam=0.03)
        ev = Evolution(model="cubic-quintic", grid=g, T=1.0, Nt=200)
        rec = evolve(u0, ev)
        assert rec.mass_drift < 1e-10

    def test_overflow_guard_records_stop(self):
        g = make_grid(4, 2, 64, 32)
        u0 = soliton_field(g, omega=0.12)
        ev = Evolution(model="cubic-quintic", grid=g, T=1.0, Nt=100,
                       overflow_threshold=0.1)
        rec = evolve(u0, ev)
        assert rec.termination.status == "overflow-stop"
        assert rec.termination.time == 0.0

    def test_energy_drift_stop_records_status(self):
        # a strongly perturbed cubic state on a coarse grid loses accuracy fast
        g = make_grid(10, 2, 128, 32)
        u0 = soliton_field(g, omega=1.0, model="cubic", lam=np.sqrt(2) / 10)
        ev = Evolution(model="cubic", grid=g, T=50.0, Nt=500, sample_stride=1)
        rec = evolve(u0, ev)
        assert rec.termination.status in ("energy-drift-stop", "overflow-stop")
        assert rec.termination.stopped_early
        assert rec.times[-1] == rec.termination.time
        if rec.termination.status == "energy-drift-stop":
            assert rec.delta_e[-1] > ev.drift_threshold

    def test_energy_functional_conserved_value(self):
        # energy() combines the integrals with the conserved coefficients
        from cqnls.grid import quadrature_integrals

        g = make_grid(8, 2, 128, 32)
        f = soliton_field(g, omega=0.1)
        ints = quadrature_integrals(f)
        e = energy("cubic-quintic", ints)
        assert e == pytest.approx(0.5 * ints.grad2 - 0.25 * ints.l4 + ints.l6 / 6, rel=1e-14)
        e_cub = energy("cubic", ints)
        assert e_cub == pytest.approx(0.5 * ints.grad2 - 0.25 * ints.l4, rel=1e-14)
