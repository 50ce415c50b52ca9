"""Exact 1D solitary-wave profiles and initial-condition builders.

Two model families are supported:

* ``cubic-quintic``: i u_t + u_xx = -|u|^2 u + |u|^4 u, with the explicit
  soliton  phi(x) = (1/(4w) + sqrt(1/(16w^2) - 1/(3w)) * cosh(2 sqrt(w) x))^(-1/2)
  for frequencies 0 < w < 3/16.
* ``cubic``: the same equation without the quintic term, with the sech
  soliton  phi(x) = sqrt(2w) * sech(sqrt(w) x)  for any w > 0.

Energies use the conserved functional
E = 1/2 |grad u|^2 - 1/4 |u|^4 + 1/6 |u|^6 (quintic term dropped for the
cubic model), whose time derivative vanishes along the flow.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainTooSmallError, InvalidConfigError, InvalidFrequencyError, OutOfRangeError
from .grid import Field, Grid2D

CUBIC_QUINTIC = "cubic-quintic"
CUBIC = "cubic"
MODELS = (CUBIC_QUINTIC, CUBIC)

OMEGA_MAX_CQ = 3.0 / 16.0
#: supremum of the cubic-quintic soliton amplitude, reached as w -> 3/16
AMPLITUDE_SUP_CQ = float(np.sqrt(3.0) / 2.0)

BOUNDARY_TOL = 1e-12


def _check_model(model: str) -> None:
    if model not in MODELS:
        raise InvalidConfigError(f"unknown model {model!r}; expected one of {MODELS}")


@dataclass(frozen=True)
class SolitonProfile1D:
    """Parametrized exact line-soliton profile phi_w(x) >= 0."""

    model: str
    omega: float

    def __post_init__(self):
        _check_model(self.model)
        w = self.omega
        if self.model == CUBIC_QUINTIC and not (0.0 < w < OMEGA_MAX_CQ):
            raise InvalidFrequencyError(
                f"cubic-quintic solitons require 0 < omega < 3/16, got {w}"
            )
        if self.model == CUBIC and not w > 0.0:
            raise InvalidFrequencyError(f"cubic solitons require omega > 0, got {w}")

    # cosh-coefficient pair of the cubic-quintic closed form
    def _cq_coeffs(self) -> tuple[float, float]:
        w = self.omega
        return 1.0 / (4.0 * w), np.sqrt(1.0 / (16.0 * w * w) - 1.0 / (3.0 * w))

    def evaluate(self, x) -> np.ndarray:
        """phi_w(x); even, positive, exponentially decaying, vectorized."""
        x_in = np.asarray(x, dtype=float)
        x1 = np.atleast_1d(x_in)
        rw = np.sqrt(self.omega)
        if self.model == CUBIC:
            # sech written overflow-free: 2 e^{-|z|} / (1 + e^{-2|z|})
            z = np.abs(rw * x1)
            e = np.exp(-z)
            out = np.sqrt(2.0 * self.omega) * 2.0 * e / (1.0 + e * e)
        else:
            A, B = self._cq_coeffs()
            z = np.abs(2.0 * rw * x1)
            out = np.empty_like(z)
            small = z < 700.0
            out[small] = (A + B * np.cosh(z[small])) ** -0.5
            # far tail: phi ~ sqrt(2/B) e^{-z/2}; underflows cleanly to 0
            out[~small] = np.sqrt(2.0 / B) * np.exp(-0.5 * z[~small])
        return out.reshape(x_in.shape) if x_in.ndim else float(out[0])

    def derivative(self, x) -> np.ndarray:
        """d phi_w / dx, with the same overflow handling as evaluate."""
        x_in = np.asarray(x, dtype=float)
        x1 = np.atleast_1d(x_in)
        rw = np.sqrt(self.omega)
        if self.model == CUBIC:
            z = np.abs(rw * x1)
            e = np.exp(-z)
            sech = 2.0 * e / (1.0 + e * e)
            out = -rw * np.sqrt(2.0 * self.omega) * sech * np.tanh(rw * x1)
        else:
            A, B = self._cq_coeffs()
            z = 2.0 * rw * x1
            az = np.abs(z)
            out = np.empty_like(az)
            small = az < 700.0
            phi = np.empty_like(az)
            phi[small] = (A + B * np.cosh(z[small])) ** -0.5
            out[small] = -rw * B * np.sinh(z[small]) * phi[small] ** 3
            out[~small] = -np.sign(z[~small]) * rw * np.sqrt(2.0 / B) * np.exp(-0.5 * az[~small])
        return out.reshape(x_in.shape) if x_in.ndim else float(out[0])

    def amplitude(self) -> float:
        """Peak value phi_w(0)."""
        if self.model == CUBIC:
            return float(np.sqrt(2.0 * self.omega))
        w = self.omega
        return float(np.sqrt(3.0) * np.sqrt(0.25 - np.sqrt(1.0 / 16.0 - w / 3.0)))


def fit_omega_from_amplitude(a: float) -> float:
    """Invert the cubic-quintic amplitude map: w = a^2/2 - a^4/3.

    Valid for peak values 0 < a < sqrt(3)/2 (amplitude at w = 3/16);
    raises OutOfRangeError otherwise.  Exact inverse of
    SolitonProfile1D.amplitude on the admissible window.
    """
    if not 0.0 < a < AMPLITUDE_SUP_CQ:
        raise OutOfRangeError(
            f"amplitude {a} outside the invertible range (0, sqrt(3)/2)"
        )
    return a * a / 2.0 - a**4 / 3.0


def cubic_mass_closed_form(omega: float) -> float:
    """Closed-form 1D mass of the cubic soliton: integral phi^2 dx = 4 sqrt(w)."""
    if not omega > 0:
        raise InvalidFrequencyError(f"cubic solitons require omega > 0, got {omega}")
    return 4.0 * np.sqrt(omega)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)


def _half_line_quadrature(p: SolitonProfile1D, density) -> float:
    # composite 20-point Gauss-Legendre on [0, X], X = 50/sqrt(w); the
    # integrand tail beyond X is below e^{-100} of the peak scale.
    X = 50.0 / np.sqrt(p.omega)
    m = 100
    edges = np.linspace(0.0, X, m + 1)
    h = edges[1] - edges[0]
    centers = 0.5 * (edges[:-1] + edges[1:])
    nodes = centers[:, None] + 0.5 * h * _GL_NODES[None, :]
    vals = density(nodes.ravel()).reshape(nodes.shape)
    return float((vals @ _GL_WEIGHTS).sum() * 0.5 * h)


def mass_1d(p: SolitonProfile1D) -> float:
    """Line mass integral phi_w^2 dx over the real line."""
    return 2.0 * _half_line_quadrature(p, lambda x: p.evaluate(x) ** 2)


def energy_1d(p: SolitonProfile1D) -> float:
    """Conserved 1D energy of the profile (negative for every soliton)."""
    quintic = 1.0 if p.model == CUBIC_QUINTIC else 0.0

    def density(x):
        phi = p.evaluate(x)
        dphi = p.derivative(x)
        return 0.5 * dphi**2 - 0.25 * phi**4 + quintic * phi**6 / 6.0

    return 2.0 * _half_line_quadrature(p, density)


def dump_profile_csv(p: SolitonProfile1D, xs, path) -> None:
    """Write a two-column CSV (x, phi(x)) for external plotting."""
    xs = np.asarray(xs, dtype=float)
    vals = p.evaluate(xs)
    with open(path, "w") as fh:
        fh.write("x,phi\n")
        for xv, pv in zip(xs, vals):
            fh.write(f"{xv:.17g},{pv:.17g}\n")


# ---------------------------------------------------------------------------
# initial conditions on a 2D grid

PLAIN_LINE_SOLITON = "plain-line-soliton"
GAUSSIAN_PERTURBED = "gaussian-perturbed"
PERIODIC_DEFORMATION = "periodic-deformation"
GROUND_STATE_EMBED = "ground-state-embed"

IC_KINDS = (PLAIN_LINE_SOLITON, GAUSSIAN_PERTURBED, PERIODIC_DEFORMATION, GROUND_STATE_EMBED)


@dataclass(frozen=True)
class InitialCondition:
    """Recipe for an initial state on a Grid2D.

    kind selects the expression:
      * plain-line-soliton:    u0 = phi_w(x)
      * gaussian-perturbed:    u0 = phi_w(x) + lam * exp(-(x^2+y^2))
      * periodic-deformation:  u0 = phi_w(x - lam*cos(y))
      * ground-state-embed:    u0 = Q_w(|x|) interpolated from a radial state

    lam is a signed amplitude for the Gaussian bump and a non-negative
    deformation amplitude for the periodic deformation.
    """

    kind: str
    profile: Optional[SolitonProfile1D] = None
    ground_state: object = None
    lam: float = 0.0

    def __post_init__(self):
        if self.kind not in IC_KINDS:
            raise InvalidConfigError(f"unknown initial-condition kind {self.kind!r}")
        if self.kind == GROUND_STATE_EMBED:
            if self.ground_state is None:
                raise InvalidConfigError("ground-state-embed requires a ground_state")
        elif self.profile is None:
            raise InvalidConfigError(f"{self.kind} requires a 1D profile")
        if self.kind == PERIODIC_DEFORMATION and self.lam < 0:
            raise InvalidConfigError("deformation amplitude must be >= 0")


def build_initial_condition(ic: InitialCondition, g: Grid2D, strict: bool = False) -> Field:
    """Sample the initial condition exactly at the grid nodes.

    The result must be numerically periodic: if |u| on the x-boundary
    exceeds 1e-12 a warning is emitted (or DomainTooSmallError when
    strict=True).
    """
    X, Y = g.meshgrid()
    if ic.kind == PLAIN_LINE_SOLITON:
        vals = np.broadcast_to(ic.profile.evaluate(g.x)[None, :], g.shape).copy()
    elif ic.kind == GAUSSIAN_PERTURBED:
        vals = ic.profile.evaluate(g.x)[None, :] + ic.lam * np.exp(-(X**2 + Y**2))
    elif ic.kind == PERIODIC_DEFORMATION:
        vals = ic.profile.evaluate(X - ic.lam * np.cos(Y))
    else:  # ground-state embed; late import to avoid a module cycle
        from .groundstate import embed_radial

        return embed_radial(ic.ground_state, g, strict=strict)

    field = Field(g, vals.astype(np.complex128))
    check_boundary_decay(field, strict=strict)
    return field


def check_boundary_decay(f: Field, strict: bool = False, tol: float = BOUNDARY_TOL) -> float:
    """Max |u| on the x-boundary column; warns or raises above tol."""
    edge = float(np.abs(f.values[:, 0]).max())
    if edge > tol:
        msg = f"|u| = {edge:.3e} at the x-boundary exceeds {tol:g}; enlarge Lx"
        if strict:
            raise DomainTooSmallError(msg)
        warnings.warn(msg, stacklevel=2)
    return edge
