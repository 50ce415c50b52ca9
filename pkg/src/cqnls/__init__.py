"""Pseudo-spectral simulator and analysis toolkit for the cubic-quintic
(and pure cubic) nonlinear Schrodinger equation on a periodic waveguide
rectangle, with exact line-soliton profiles, radial 2D ground states,
transverse-stability diagnostics, and a registry of reproducible runs."""

from .diagnostics import (
    FitResult,
    StabilityVerdict,
    classify_final_state,
    count_peaks,
    critical_torus_length,
    fit_line_soliton,
    y_averaged_peak,
)
from .errors import (
    CQNLSError,
    DivergedError,
    DomainMismatchError,
    DomainTooSmallError,
    FitImpossibleError,
    InvalidConfigError,
    InvalidFrequencyError,
    NoConvergenceError,
    OutOfRangeError,
    SnapshotFormatError,
)
from .grid import (
    Field,
    FieldIntegrals,
    Grid2D,
    inverse_transform,
    make_grid,
    quadrature_integrals,
    quadrature_mass,
    transform,
)
from .groundstate import (
    GroundState,
    embed_radial,
    ground_state_curves,
    refine_on_grid,
    solve_ground_state,
)
from .integrator import (
    CompositeRK4Stepper,
    Evolution,
    RunRecord,
    StrangSplitStepper,
    energy,
    evolve,
    rhs,
)
from .profiles import (
    CUBIC,
    CUBIC_QUINTIC,
    InitialCondition,
    SolitonProfile1D,
    build_initial_condition,
    cubic_mass_closed_form,
    energy_1d,
    fit_omega_from_amplitude,
    mass_1d,
)
from .scenarios import Scenario, get_scenario, registry, run_scenario
from .snapshots import read_snapshot, write_snapshot

__version__ = "0.1.0"
