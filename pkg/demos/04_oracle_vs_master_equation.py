"""
Checking the steady-state solver
================================

The sparse LU steady state is checked three ways: a linear cavity relaxes
to a coherent state, long-time integration lands on the same matrix, and
the statistics stop changing once the Fock space is large enough.
"""

# %%
import numpy as np

from spinkerr import ModelPoint, solve_model, check_truncation
from spinkerr.lindblad import DensityMatrix, evolve_rk4, model_liouvillian
from spinkerr.observables import g2_zero, g3_zero, mean_photon

# %%
# Without the Kerr term the steady state is coherent with alpha = -xi / (dL - i gamma/2).
mp = ModelPoint(0.5, 0.0, 0.0, 0.3, 1.0)
rho = solve_model(mp, (20,)).rho
alpha = -mp.xi / (mp.delta_l - 0.5j * mp.gamma)
print(f"N = {mean_photon(rho):.10f}  |alpha|^2 = {abs(alpha) ** 2:.10f}  g2 = {g2_zero(rho):.10f}")

# %%
# Integrating from the vacuum reaches the same state.
mp = ModelPoint(0.0, 1.3, 1.3, 0.08, 1.0)
L = model_liouvillian(mp, (8,))
late = evolve_rk4(L, DensityMatrix.fock((8,), 0), t_final=40.0, dt=0.01)
ss = solve_model(mp, (8,))
print(f"trace distance after t = 40/gamma: {ss.rho.trace_distance(late):.2e}")
print("health:", {k: f"{v:.1e}" for k, v in ss.health().items()})

# %%
# Truncation: smallest dimension whose statistics change by < 1e-6 when grown.
mp2 = ModelPoint(0.0, -1.99, 1.31, 0.08, 1.0, 2.0)
print("single mode:", check_truncation(mp))
print("two modes:  ", check_truncation(mp2, dims=(3, 3)))
for d in (5, 6, 7):
    rho = solve_model(mp2, (d, d)).rho
    print(f"  d = {d}: g3 = {g3_zero(rho):.10f}")
