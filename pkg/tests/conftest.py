"""Shared fixtures: the expensive reference runs are computed once per session."""

import numpy as np
import pytest

from cqnls.grid import make_grid
from cqnls.groundstate import embed_radial, refine_on_grid, solve_ground_state
from cqnls.integrator import Evolution, evolve
from cqnls.profiles import InitialCondition, SolitonProfile1D, build_initial_condition
from cqnls.scenarios import run_scenario


@pytest.fixture(scope="session")
def ground_state_01():
    return solve_ground_state("cubic-quintic", 0.1)


@pytest.fixture(scope="session")
def validation_a():
    """Line-soliton propagation at the reference parameters; returns (u0, record)."""
    g = make_grid(40, 3, 1024, 32)
    p = SolitonProfile1D("cubic-quintic", 0.1)
    u0 = build_initial_condition(InitialCondition("plain-line-soliton", profile=p), g)
    rec = evolve(u0, Evolution(model="cubic-quintic", grid=g, T=1.0, Nt=1000))
    return u0, rec


@pytest.fixture(scope="session")
def validation_b():
    """Embedded 2D ground state propagated one time unit; returns (u0, record)."""
    g = make_grid(10, 10, 256, 256)
    corner = float(np.hypot(10 * np.pi, 10 * np.pi))
    gs = solve_ground_state("cubic-quintic", 0.1, R=max(30 / np.sqrt(0.1), corner))
    u0, _ = refine_on_grid(embed_radial(gs, g), "cubic-quintic", 0.1)
    rec = evolve(u0, Evolution(model="cubic-quintic", grid=g, T=1.0, Nt=10**4))
    return u0, rec


def _scenario_fixture(scenario_id):
    @pytest.fixture(scope="session")
    def fixture():
        return run_scenario(scenario_id, verbose=False)

    return fixture


stable_plus = _scenario_fixture("stable-Ly2-plus")
stable_minus = _scenario_fixture("stable-Ly2-minus")
blowup_plus = _scenario_fixture("cubic-blowup-plus")
blowup_minus = _scenario_fixture("cubic-blowup-minus")
cubic_small_plus_desk = _scenario_fixture("cubic-gauss-small-plus-desk")
cubic_small_minus_desk = _scenario_fixture("cubic-gauss-small-minus-desk")
unstable_desk = _scenario_fixture("unstable-Ly3-plus-desk")
freq018_plus_desk = _scenario_fixture("freq018-Ly3-plus-desk")
freq018_minus_desk = _scenario_fixture("freq018-Ly3-minus-desk")
deform_cq_ly3_desk = _scenario_fixture("deform-cq-Ly3-desk")
