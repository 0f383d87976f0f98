"""
Derived rates of the spinning resonator
=======================================

Every model parameter follows from a handful of device numbers: wavelength,
quality factor, mode volume, refractive and Kerr indices, radius, input power
and rotation speed. Here we derive them and look at how the direction of the
drive flips the sign of the rotation-induced shift.
"""

# %%
# The default device parameters.
from spinkerr import PhysicalParams, derive_rates

params = PhysicalParams()
print(params)

# %%
# Loss rate, Kerr strength and drive amplitude in rad/s and in units of gamma.
rates = derive_rates(params.replace(omega=3.8e3))
print(f"gamma = {rates.gamma:.6g} rad/s")
for name, value in rates.in_units_of_gamma().items():
    print(f"{name:>12s} = {value:+.5f} gamma")

# %%
# Turning the drive around changes only the sign of the shift.
for drive in ("cw", "ccw"):
    r = derive_rates(params.replace(omega=3.8e3, drive=drive))
    print(drive, f"delta_f = {r.delta_f / r.gamma:+.5f} gamma")

# %%
# The shift is linear in the rotation speed.
import numpy as np

for omega in np.linspace(0, 2e4, 5):
    r = derive_rates(params.replace(omega=omega))
    print(f"omega = {omega:8.0f} rad/s   |delta_f| = {r.delta_f_abs / r.gamma:.4f} gamma")
