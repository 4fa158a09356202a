"""Rational operators arising from fourth-order root finding on z^2 + c.

Two parametrizations of the same degree-5 operator are provided: the raw
method parameter b (``eval_b``) and the reduced parameter a (``eval_ank``
with n=4, k=1), related by the two-to-one map ``reparam_a_of_b``.  The
general family z^n ((z-a)/(1-a z))^k covers several other root-finding
methods for other (n, k).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .sphere import INF, SpherePoint, ratio, sphere

SQRT2 = math.sqrt(2.0)

# b values at which the degree-5 form collapses to a monomial
BEHL_DEGENERATE = (1.0 + 0j, -3.0 + 0j, -1.0 + 0j, 1.0 + 2 * SQRT2 + 0j, 1.0 - 2 * SQRT2 + 0j)


@dataclass(frozen=True)
class GeneralParams:
    """Parameters (a, n, k) of the operator z^n ((z-a)/(1-a z))^k."""

    a: complex
    n: int
    k: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        object.__setattr__(self, "a", complex(self.a))

    @property
    def degenerate(self) -> bool:
        """True when the map collapses to (+-1)^k z^n (a = 1 or a = -1)."""
        return self.a == 1 or self.a == -1

    @property
    def monomial(self) -> bool:
        """True when a = 0 and the map is the monomial z^(n+k)."""
        return self.a == 0

    @property
    def degree(self) -> int:
        return self.n if self.degenerate else self.n + self.k


@dataclass(frozen=True)
class BehlParams:
    """Parameter b of the fourth-order method family."""

    b: complex

    def __post_init__(self):
        object.__setattr__(self, "b", complex(self.b))

    @property
    def degenerate(self) -> bool:
        return self.b in BEHL_DEGENERATE

    @property
    def degree(self) -> int:
        if self.b in (1 + 0j, -3 + 0j):
            return 3
        if self.b in BEHL_DEGENERATE:
            return 4
        return 5


@dataclass(frozen=True)
class QuadraticTarget:
    """The polynomial z^2 + c whose roots the method approximates."""

    c: complex

    def __post_init__(self):
        if self.c == 0:
            raise ValueError("c must be nonzero (the two roots coincide)")
        object.__setattr__(self, "c", complex(self.c))

    @property
    def roots(self):
        r = 1j * cmath.sqrt(self.c)
        return (r, -r)


def _behl_coeffs(b: complex):
    """Numerator/denominator coefficients A, B with O_b = z^4 (A+Bz)/(B+Az)."""
    return b * b - 6 * b - 11, b * b + 2 * b - 3


def eval_ank(p: GeneralParams, z) -> SpherePoint:
    """Apply the operator z^n ((z-a)/(1-a z))^k on the sphere."""
    z = sphere(z)
    if z.inverted:
        # the map commutes with z -> 1/z, so evaluate in the other chart
        return eval_ank(p, SpherePoint(z.value)).inverse()
    if p.degenerate:
        # (z-a)/(1-az) is identically -1 for a=1 and +1 for a=-1
        s = -1.0 if (p.a == 1 and p.k % 2 == 1) else 1.0
        return sphere(s * z.value ** p.n)
    v = z.value
    num = v ** p.n * (v - p.a) ** p.k
    den = (1 - p.a * v) ** p.k
    if num == 0:
        return SpherePoint(0j)
    return ratio(num, den)


def eval_ank_deriv(p: GeneralParams, z) -> complex:
    """Closed-form derivative of the general operator at a finite point."""
    z = sphere(z)
    if z.is_infinity:
        raise ValueError("derivative requested at pole or infinity")
    v = z.to_complex()
    if p.degenerate:
        s = -1.0 if (p.a == 1 and p.k % 2 == 1) else 1.0
        return s * p.n * v ** (p.n - 1)
    if p.a != 0 and 1 - p.a * v == 0:
        raise ValueError("derivative requested at pole or infinity")
    a, n, k = p.a, p.n, p.k
    quad = -a * n * v * v + ((n + k) + a * a * (n - k)) * v - a * n
    return v ** (n - 1) * (v - a) ** (k - 1) * quad / (1 - a * v) ** (k + 1)


def eval_b(p: BehlParams, z) -> SpherePoint:
    """Apply the raw-parameter operator O_b on the sphere."""
    z = sphere(z)
    if z.inverted:
        return eval_b(p, SpherePoint(z.value)).inverse()
    b, v = p.b, z.value
    if b == 1 or b == -3:
        return sphere(v ** 3)
    if b == -1:
        return sphere(v ** 4)
    if p.degenerate:  # b = 1 +- 2 sqrt(2)
        return sphere(-(v ** 4))
    A, B = _behl_coeffs(b)
    num = v ** 4 * (A + B * v)
    if num == 0:
        return SpherePoint(0j)
    return ratio(num, B + A * v)


def eval_b_deriv(p: BehlParams, z) -> complex:
    z = sphere(z)
    if z.is_infinity:
        raise ValueError("derivative requested at pole or infinity")
    v = z.to_complex()
    b = p.b
    if b == 1 or b == -3:
        return 3 * v * v
    if b == -1:
        return 4 * v ** 3
    if p.degenerate:
        return -4 * v ** 3
    A, B = _behl_coeffs(b)
    if B + A * v == 0:
        raise ValueError("derivative requested at pole or infinity")
    C = 51 + 42 * b + 4 * b ** 2 - 2 * b ** 3 + b ** 4
    return 4 * v ** 3 * (A * B + 2 * C * v + A * B * v * v) / (B + A * v) ** 2


def reparam_a_of_b(b: complex) -> complex:
    """Reduced parameter a(b) = (11 + 6b - b^2) / (-3 + 2b + b^2)."""
    b = complex(b)
    den = b * b + 2 * b - 3
    if den == 0:
        raise ValueError("degenerate parameter: b in {1, -3}")
    return (11 + 6 * b - b * b) / den


def reparam_b_of_a(a: complex):
    """The two raw parameters mapping to a; second is inf when a = -1.

    Solves (a+1) b^2 + (2a-6) b - (3a+11) = 0.  For a = -1 the quadratic
    degenerates and one branch escapes to infinity; that branch is
    returned as complex infinity.
    """
    a = complex(a)
    if a == -1:
        # linear equation: -8 b - 8 = 0
        return (-1 + 0j, complex(math.inf, 0.0))
    disc = cmath.sqrt((2 * a - 6) ** 2 + 4 * (a + 1) * (3 * a + 11))
    b1 = (-(2 * a - 6) + disc) / (2 * (a + 1))
    b2 = (-(2 * a - 6) - disc) / (2 * (a + 1))
    return (b1, b2)


def behl_step(b, t: QuadraticTarget, x):
    """One iteration of the two-substep fourth-order method on z^2 + c.

    Written with exact integer constants so it also runs on mpmath
    numbers when extended precision is needed.
    """
    c = t.c
    f = x * x + c
    fp = 2 * x
    if fp == 0:
        raise ValueError("iteration singularity: f'(x) = 0")
    y = x - 2 * f / (3 * fp)
    fpy = 2 * y
    d1 = b * fp + 3 * fpy
    d2 = 3 * (b + 1) * fpy - (b + 5) * fp
    if d1 == 0 or d2 == 0:
        raise ValueError("iteration singularity: vanishing denominator")
    num = ((b * b - 22 * b - 27) * fp + 3 * (b * b + 10 * b + 5) * fpy) * f
    return x - num / (2 * d1 * d2)


def moebius_h(t: QuadraticTarget, z) -> SpherePoint:
    """The conjugation h(z) = (z - i sqrt(c)) / (z + i sqrt(c)).

    Sends the root i sqrt(c) of z^2 + c to 0, the other root to
    infinity, and infinity itself to 1.
    """
    z = sphere(z)
    s = 1j * cmath.sqrt(t.c)
    if z.is_infinity:
        return SpherePoint(1 + 0j)
    v = z.to_complex()
    return ratio(v - s, v + s)


def moebius_h_inv(t: QuadraticTarget, w) -> SpherePoint:
    """Inverse of moebius_h: w -> i sqrt(c) (1 + w) / (1 - w)."""
    w = sphere(w)
    s = 1j * cmath.sqrt(t.c)
    if w.is_infinity:
        return sphere(-s)
    v = w.to_complex()
    return ratio(s * (1 + v), 1 - v)


def _R_parts(p: GeneralParams, v: complex, inverted: bool):
    a, n, k = p.a, p.n, p.k
    if inverted:
        # homogenized form: both terms scaled by v^(n+k)
        P = (1 + v) ** n * ((1 - a) + (1 + a) * v) ** k
        Q = (1 - v) ** n * ((1 - a) - (1 + a) * v) ** k
    else:
        P = (v + 1) ** n * (v * (1 - a) + 1 + a) ** k
        Q = (v - 1) ** n * (v * (1 - a) - 1 - a) ** k
    return P, Q


def eval_R(p: GeneralParams, z) -> SpherePoint:
    """The conjugated map (P+Q)/(P-Q); odd, with superattracting +-1."""
    z = sphere(z)
    P, Q = _R_parts(p, z.value, z.inverted)
    if P + Q == 0:
        return SpherePoint(0j)
    return ratio(P + Q, P - Q)


def eval_S(p: GeneralParams, w) -> SpherePoint:
    """The squared semiconjugate map: S(w) = R(sqrt(w))^2.

    Both square-root branches agree because R is odd.
    """
    w = sphere(w)
    r = SpherePoint(cmath.sqrt(w.value), w.inverted)
    out = eval_R(p, r)
    return sphere(SpherePoint(out.value ** 2, out.inverted))
