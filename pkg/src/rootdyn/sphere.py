"""Points on the extended complex plane with two coordinate charts.

A point is stored either in the standard chart (the value is the point
itself) or in the inverted chart (the value w represents 1/w, so
(inverted, 0) is the point at infinity).  Values are renormalized so the
stored modulus never exceeds 2, which keeps orbit arithmetic
well-conditioned no matter how close an orbit gets to infinity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

#: modulus at which a value is moved to the other chart
CHART_LIMIT = 2.0


@dataclass(frozen=True)
class SpherePoint:
    value: complex
    inverted: bool = False

    @property
    def is_infinity(self) -> bool:
        return self.inverted and self.value == 0

    @property
    def is_zero(self) -> bool:
        return (not self.inverted) and self.value == 0

    def to_complex(self) -> complex:
        """Return the point as a plain complex number (inf for infinity)."""
        if self.inverted:
            if self.value == 0:
                return complex(math.inf, 0.0)
            return 1.0 / self.value
        return self.value

    def modulus(self) -> float:
        if self.inverted:
            if self.value == 0:
                return math.inf
            return 1.0 / abs(self.value)
        return abs(self.value)

    def inverse(self) -> "SpherePoint":
        """The image under z -> 1/z, staying in a well-conditioned chart."""
        return SpherePoint(self.value, not self.inverted)

    def __repr__(self):
        if self.is_infinity:
            return "SpherePoint(inf)"
        if self.inverted:
            return "SpherePoint(1/%r)" % (self.value,)
        return "SpherePoint(%r)" % (self.value,)


ZERO = SpherePoint(0j)
ONE = SpherePoint(1 + 0j)
INF = SpherePoint(0j, inverted=True)


def sphere(z) -> SpherePoint:
    """Coerce a complex number (or SpherePoint) to a normalized SpherePoint."""
    if isinstance(z, SpherePoint):
        if abs(z.value) > CHART_LIMIT:
            return SpherePoint(1.0 / z.value, not z.inverted)
        return z
    z = complex(z)
    if cmath.isinf(z) or cmath.isnan(z):
        return INF
    if abs(z) > CHART_LIMIT:
        return SpherePoint(1.0 / z, inverted=True)
    return SpherePoint(z)


def ratio(num: complex, den: complex) -> SpherePoint:
    """num/den as a sphere point, without overflowing when den is tiny."""
    if den == 0:
        if num == 0:
            raise ZeroDivisionError("0/0 is not a point on the sphere")
        return INF
    if num == 0:
        return ZERO
    if abs(num) > abs(den):
        return SpherePoint(den / num, inverted=True)
    return SpherePoint(num / den)


def chordal(p, q) -> float:
    """Chordal distance on the sphere, in [0, 2]; infinity-safe."""
    p = sphere(p)
    q = sphere(q)
    zp = p.to_complex()
    zq = q.to_complex()
    fp = not (cmath.isinf(zp) or cmath.isnan(zp))
    fq = not (cmath.isinf(zq) or cmath.isnan(zq))
    if fp and fq:
        return 2.0 * abs(zp - zq) / math.sqrt((1 + abs(zp) ** 2) * (1 + abs(zq) ** 2))
    if fp:
        return 2.0 / math.sqrt(1 + abs(zp) ** 2)
    if fq:
        return 2.0 / math.sqrt(1 + abs(zq) ** 2)
    return 0.0


def sphere_eq(p, q, tol=1e-10) -> bool:
    return chordal(p, q) < tol
