"""2D ground states (lump solitons) and the critical torus length.

Solves the radial profiles Q_w by Newton continuation, tabulates their
mass/energy/amplitude, and evaluates the instability heuristic: a line
soliton on a torus of half-period Ly is expected to go unstable once
2 pi Ly M_1D exceeds the lump mass M(Q_w).
"""

import numpy as np

from cqnls import SolitonProfile1D, critical_torus_length, mass_1d, solve_ground_state
from cqnls.groundstate import export_profile_csv, ground_state_curves

print("solving the cubic-quintic lump family by Newton continuation ...")
rows = ground_state_curves("cubic-quintic", [0.04, 0.06, 0.08, 0.10, 0.12, 0.14, 0.16])
print(" omega     M(Q)        E(Q)      sup(Q)")
for p in rows:
    print(f" {p.omega:5.2f}  {p.mass:9.3f}  {p.energy:10.4f}  {p.amplitude:8.4f}")

gs = solve_ground_state("cubic-quintic", 0.1)
export_profile_csv(gs, "ground_state_omega0.1.csv")
print(f"\nreference state: M = {gs.mass:.4f}, sup Q = {gs.amplitude:.4f}, "
      f"discrete residual = {gs.residual_norm:.2e}")
print("wrote ground_state_omega0.1.csv")

m1 = mass_1d(SolitonProfile1D("cubic-quintic", 0.1))
print(f"\nline-soliton 2D mass per unit Ly: 2 pi M_1D = {2 * np.pi * m1:.4f}")
for Ly in (2, 3):
    m2d = 2 * np.pi * Ly * m1
    side = "<" if m2d < gs.mass else ">"
    verdict = "stable" if m2d < gs.mass else "UNSTABLE"
    print(f"  Ly = {Ly}: line mass {m2d:6.2f} {side} {gs.mass:6.2f} lump mass -> {verdict}")
lc = critical_torus_length(0.1, ground_state=gs)
print(f"critical torus half-period: L_crit(0.1) = {lc:.3f}")

print("\nthe cubic model for comparison (scale-invariant lump mass):")
for w in (0.25, 1.0):
    g = solve_ground_state("cubic", w)
    print(f"  omega = {w:4}: M = {g.mass:.5f}, sup = {g.amplitude:.4f}, E = {g.energy:+.2e}")
