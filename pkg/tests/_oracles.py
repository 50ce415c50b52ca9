"""Independent oracles shared across the test suite.

Everything here is derived from first principles (closed forms evaluated
in high precision, quadrature of exact expressions, textbook identities)
and deliberately avoids the library's own computational paths.
"""

from __future__ import annotations

import mpmath as mp
import numpy as np
from scipy.integrate import simpson

mp.mp.dps = 40


def phi_cq_mp(omega, x):
    """Cubic-quintic soliton profile evaluated in 40-digit arithmetic."""
    w = mp.mpf(omega)
    A = 1 / (4 * w)
    B = mp.sqrt(1 / (16 * w**2) - 1 / (3 * w))
    return (A + B * mp.cosh(2 * mp.sqrt(w) * mp.mpf(x))) ** mp.mpf("-0.5")


def phi_cubic_mp(omega, x):
    w = mp.mpf(omega)
    return mp.sqrt(2 * w) / mp.cosh(mp.sqrt(w) * mp.mpf(x))


def cq_amplitude_mp(omega) -> float:
    w = mp.mpf(omega)
    return float(mp.sqrt(3) * mp.sqrt(mp.mpf(1) / 4 - mp.sqrt(mp.mpf(1) / 16 - w / 3)))


def cq_mass_closed_form(omega) -> float:
    """Exact line mass of the cubic-quintic soliton.

    With A = 1/(4w), B = sqrt(1/(16w^2) - 1/(3w)) the integrand is
    1/(A + B cosh(2 sqrt(w) x)), whose antiderivative gives
    M = 2 sqrt(3) atanh( sqrt((A-B)/(A+B)) ).
    """
    w = mp.mpf(omega)
    A = 1 / (4 * w)
    B = mp.sqrt(1 / (16 * w**2) - 1 / (3 * w))
    return float(2 * mp.sqrt(3) * mp.atanh(mp.sqrt((A - B) / (A + B))))


def cq_energy_quadrature(omega) -> float:
    """1D conserved energy of phi_w by adaptive quadrature (40 digits)."""
    w = mp.mpf(omega)

    def density(x):
        phi = phi_cq_mp(w, x)
        dphi = mp.diff(lambda t: phi_cq_mp(w, t), x)
        return dphi**2 / 2 - phi**4 / 4 + phi**6 / 6

    return float(2 * mp.quad(density, [0, 10, mp.inf]))


def ode_residual_mp(omega, x, h=mp.mpf("1e-4")):
    """-phi'' + w phi - phi^3 + phi^5 with a central second difference."""
    w = mp.mpf(omega)
    x = mp.mpf(x)
    phi = phi_cq_mp(w, x)
    second = (phi_cq_mp(w, x + h) - 2 * phi + phi_cq_mp(w, x - h)) / h**2
    return float(-second + w * phi - phi**3 + phi**5)


def pohozaev_residuals(gs) -> tuple[float, float]:
    """Relative residuals of the two 2D ground-state integral identities.

    Multiplying the stationary equation by Q and integrating gives
        P + w a - b + c = 0,
    multiplying by r Q' (Pohozaev, two dimensions) gives
        w a / 2 - b / 4 + c / 6 = 0,
    with P = int |grad Q|^2, a = int Q^2, b = int Q^4, c = int Q^6 over the
    plane (c dropped for the cubic model).  The gradient integral uses an
    independent sixth-order finite-difference derivative.
    """
    r, Q = gs.rmesh, gs.Q
    h = r[1] - r[0]
    w = gs.omega
    c5 = 1.0 if gs.model == "cubic-quintic" else 0.0
    a = 2 * np.pi * simpson(Q**2 * r, x=r)
    b = 2 * np.pi * simpson(Q**4 * r, x=r)
    c = 2 * np.pi * simpson(Q**6 * r, x=r)
    ext = np.concatenate([Q[3:0:-1], Q])
    dQ = np.empty_like(Q)
    dQ[:-3] = (-ext[:-6] + 9 * ext[1:-5] - 45 * ext[2:-4]
               + 45 * ext[4:-2] - 9 * ext[5:-1] + ext[6:]) / (60 * h)
    dQ[-3:] = 0.0
    P = 2 * np.pi * simpson(dQ**2 * r, x=r)
    i1 = P + w * a - b + c5 * c
    i2 = w * a / 2 - b / 4 + c5 * c / 6
    s1 = max(abs(P), abs(w * a), abs(b), abs(c5 * c))
    s2 = max(abs(w * a / 2), abs(b / 4), abs(c5 * c / 6))
    return abs(i1) / s1, abs(i2) / s2


# frozen values computed with the oracles above (40-digit arithmetic)
CQ_AMPLITUDE_01 = 0.48749611455069063      # cq_amplitude_mp(0.1)
CQ_MASS_01 = 1.6097038442030824            # cq_mass_closed_form(0.1)
CQ_ENERGY_01 = -0.03232432313772475        # cq_energy_quadrature(0.1)
CQ_MASS_018 = 3.9706081245599075           # cq_mass_closed_form(0.18)
CQ_AMPLITUDE_018 = 0.7745966692414834      # cq_amplitude_mp(0.18)
# continuum masses of the Gaussian-perturbed cubic line solitons on the
# Lx=100, Ly=2 torus (tails < 1e-27 at the boundary)
MASS_PERTCUB_004_PLUS = 10.104128
MASS_PERTCUB_1_PLUS = 51.345525
MASS_PERTCUB_1_MINUS = 49.248271
