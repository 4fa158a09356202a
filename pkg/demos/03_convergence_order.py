"""Measure the computational order of convergence of the method.

The family is fourth order generically and fifth order at the two
special parameter values b = 3 +- 2 sqrt(5).  The error after two
fourth-order steps is ~1e-60, far below double precision, so the
measurement runs the step on mpmath numbers at 120 digits.

Run:  python demos/03_convergence_order.py
"""

import mpmath

from rootdyn import QuadraticTarget, behl_step, empirical_order

mpmath.mp.dps = 120
t = QuadraticTarget(1.0)
root = mpmath.mpc(0, 1)
seed = mpmath.mpc(0, "0.95")

for label, b in [("b = 2            ", mpmath.mpf(2)),
                 ("b = 0.5 + 0.5i   ", mpmath.mpc("0.5", "0.5")),
                 ("b = 3 + 2 sqrt(5)", 3 + 2 * mpmath.sqrt(5)),
                 ("b = 3 - 2 sqrt(5)", 3 - 2 * mpmath.sqrt(5))]:
    order = empirical_order(lambda x: behl_step(b, t, x), root, seed)
    print("%s  measured order %.4f" % (label, order))

print()
print("Error decay for b = 2 (note the quartic collapse):")
x = seed
for m in range(5):
    x = behl_step(mpmath.mpf(2), t, x)
    print("  step %d: |x - i| = %s" % (m + 1, mpmath.nstr(abs(x - root), 5)))
