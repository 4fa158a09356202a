"""Tour of the operator family: conjugacy, reparametrization, fixed points.

Run:  python demos/01_operator_tour.py
"""

import numpy as np

from rootdyn import (
    BehlParams,
    GeneralParams,
    QuadraticTarget,
    behl_step,
    chordal,
    eval_ank,
    eval_b,
    fixed_points_ank,
    moebius_h,
    reparam_a_of_b,
    reparam_b_of_a,
)

print("=== One method step vs the conjugated rational operator ===")
t = QuadraticTarget(1.0)  # z^2 + 1, roots +-i
b = 2.0 + 0j
x = 0.4 + 0.7j
y = behl_step(b, t, x)
print("step from", x, "->", y)
lhs = moebius_h(t, y)
rhs = eval_b(BehlParams(b), moebius_h(t, x))
print("h(step(x)) =", lhs.to_complex())
print("O_b(h(x))  =", rhs.to_complex())
print("chordal mismatch:", chordal(lhs, rhs))

print()
print("=== The two-to-one reparametrization b -> a ===")
a = reparam_a_of_b(b)
print("a(b=2) =", a)
b1, b2 = reparam_b_of_a(a)
print("the two preimages of a:", b1, b2)
p5 = GeneralParams(a, 4, 1)
z = 0.3 - 0.9j
print("O_b(z)      =", eval_b(BehlParams(b), z).to_complex())
print("O_{a,4,1}(z) =", eval_ank(p5, z).to_complex())

print()
print("=== Fixed points of O_{a,4,1} with stability classes ===")
for fp in fixed_points_ank(p5):
    loc = fp.location.to_complex()
    print("  z = %-28s  |mult| = %-10.4g  %s%s"
          % (loc, abs(fp.multiplier), fp.stability,
             "  (strange)" if fp.strange else ""))

print()
print("=== Superattracting parameter a = 5/3: z = 1 absorbs the method ===")
for fp in fixed_points_ank(GeneralParams(5 / 3, 4, 1)):
    if abs(fp.location.to_complex() - 1) < 1e-8:
        print("  multiplier at z=1:", abs(fp.multiplier), "->", fp.stability)
