"""
Direction-dependent photon blockade
===================================

With one driven mode, the rotation shifts the one-photon resonance up or down
depending on the drive direction. One direction sits near the two-photon
resonance and bunches; the other is antibunched. We scan the laser detuning
and compare the master-equation steady state with the weak-drive closed form.
"""

# %%
import numpy as np

from spinkerr import PhysicalParams, run_sweep, SweepSpec

params = PhysicalParams()
spec = SweepSpec(params, axis="delta_l", start=-4, stop=4, count=17, omega=3.8e3, engine="both")
rows = run_sweep(spec)

# %%
# g2(0) for both directions, numeric and closed form.
print(" dL/g    g2_cw(num)  g2_cw(an)  g2_ccw(num)  g2_ccw(an)  class")
for r in rows:
    n, a = r.numeric, r.analytic
    print(f"{r.value:+5.1f}  {n.cw.g2:10.4f} {a.cw.g2:10.4f} {n.ccw.g2:11.4f} {a.ccw.g2:11.4f}  "
          f"{n.classification}")

# %%
# At zero detuning the pair straddles 1, which is quantum nonreciprocity.
centre = rows[len(rows) // 2]
print(f"R2 = {centre.numeric.r2:.2f} dB")

# %%
# The closed form misses the master equation by a few percent at this drive
# strength. The gap shrinks with the square of the drive amplitude.
from spinkerr.sweep import compare_engines

for scale in (1.0, 0.01):
    p = params.replace(power=params.power * scale)
    stats = compare_engines(run_sweep(SweepSpec(p, start=-4, stop=4, count=41, omega=3.8e3,
                                                engine="both")))
    print(f"power x{scale:g}: max relative g2 error {stats['g2']:.3%}")
