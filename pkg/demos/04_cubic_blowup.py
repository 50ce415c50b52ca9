"""Blow-up of perturbed line solitons in the pure cubic model.

With the quintic term absent, states whose mass exceeds the lump mass
(~11.70) can focus to a point in finite time.  The run stops itself once
the relative energy drift passes 1e-3, i.e. once the collapsing spike is
no longer resolved; the termination report carries that time.

Runs the desk-scale variant by default (about a minute); the
full-resolution version is `cqnls reproduce cubic-blowup-plus`.
"""

from cqnls import classify_final_state, quadrature_mass
from cqnls.scenarios import run_scenario

result = run_scenario("cubic-blowup-plus-desk", verbose=False)
rec = result.record
print("supercritical run (omega=1, +10% Gaussian bump):")
print(f"  initial mass {rec.masses[0]:.2f} vs lump mass ~11.70 -> collapse expected")
print(f"  termination: {rec.termination.status} at t = {rec.termination.time}")
print(f"  peak amplitude at stop: {rec.sup_norms[-1]:.1f}")
v = classify_final_state(rec)
print(f"  verdict: {v.classification}, {v.peak_count} peak(s)")

result2 = run_scenario("cubic-gauss-small-plus-desk", verbose=False)
rec2 = result2.record
print("\nsubcritical run (omega=0.04, mass below the lump mass):")
print(f"  initial mass {rec2.masses[0]:.2f} -> no collapse")
print(f"  completed to t = {rec2.times[-1]:g}; "
      f"sup norm stayed at {rec2.sup_norms.max():.3f}")
v2 = classify_final_state(rec2)
print(f"  verdict: {v2.classification}")
