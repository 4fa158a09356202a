"""Render a parameter plane and probe its black regions.

Black pixels are parameters whose free critical orbit never reaches the
basin of 0 or infinity within the iteration budget: attracting strange
fixed points, attracting cycles, and the antenna on the real axis.

Run:  python demos/02_parameter_plane.py   (writes param_plane.png)
"""

import numpy as np

from rootdyn import BehlParams, GeneralParams, classify_critical_orbit, detect_cycle
from rootdyn.fixedpoints import critical_points_b
from rootdyn.render import GridSpec, Window, colorize, render_parameter_plane, write_image
from rootdyn.stability import antenna_intervals, region_z1_ank, region_zpm_a

window = Window(-3.2, 3.2, -3.2, 3.2)
plane = render_parameter_plane("general", window, GridSpec(601, 601),
                               threads=4, nk=(4, 1))
write_image(colorize(plane, "parameter"), "param_plane.png")
frac_black = float((plane.outcome == 0).mean())
print("wrote param_plane.png;  %.1f%% of parameters are black" % (100 * frac_black))

print()
print("Why the black disks: z = 1 is attracting inside |a - 7/4| < 1/4")
for a in (1.75, 5 / 3, 2.5):
    print("  a = %-8s region(z=1): %-11s critical orbit: %s"
          % (a, region_z1_ank(a, 4, 1), classify_critical_orbit(
              GeneralParams(a, 4, 1)).outcome))

print()
print("The z_pm lobes on the real axis (2 < |Re a| < sqrt 6):")
for a in (2.2, np.sqrt(5), 3.0):
    print("  a = %-18s region(z_pm): %s" % (a, region_zpm_a(a)))

print()
print("Antenna intervals (free critical points trapped on the unit circle):")
print(" ", antenna_intervals(4, 1).intervals)
r = classify_critical_orbit(GeneralParams(1.3, 4, 1))
print("  a = 1.3 -> %s after %d iterations, |witness| = %.12f"
      % (r.outcome, r.iterations, r.witness.modulus()))

print()
print("A genuine strange attractor: period-2 cycle at b = -25")
cp = critical_points_b(-25.0)[0]
rep = detect_cycle(BehlParams(-25.0), cp)
print("  period %d, representative %s, |multiplier| = %.4f"
      % (rep.period, rep.representative, abs(rep.multiplier)))
