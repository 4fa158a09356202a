"""Analytic stability regions, boundary curves and antenna intervals."""

from __future__ import annotations

import cmath
import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .fixedpoints import strange_fixed_zpm_ank41, strange_fixed_zpm_b
from .operators import BehlParams, GeneralParams, eval_ank_deriv, eval_b_deriv

DEFAULT_BOUNDARY_TOL = 1e-9

SQRT10 = math.sqrt(10.0)
SQRT5 = math.sqrt(5.0)


@dataclass
class StabilityRegionQuery:
    which_point: str  # z1 | zm1 | zpm
    parametrization: str  # a_general | b_behl
    n: int = 4
    k: int = 1

    def __post_init__(self):
        if self.which_point not in ("z1", "zm1", "zpm"):
            raise ValueError("which_point must be z1, zm1 or zpm")
        if self.parametrization not in ("a_general", "b_behl"):
            raise ValueError("parametrization must be a_general or b_behl")
        if self.which_point == "zm1" and self.parametrization == "a_general":
            if (self.n + self.k) % 2 == 0:
                raise ValueError("z = -1 is not fixed when n + k is even")


@dataclass
class AntennaIntervals:
    plane: str  # 'a' or 'b'
    intervals: list = field(default_factory=list)  # [(lo, hi)], -inf allowed


def _z1_signed_value(a: complex, n: int, k: int) -> float:
    """Negative inside the attracting region of z = 1, zero on its boundary."""
    d = n - k
    if abs(d) >= 2:
        center = (n * n - k * k - 1) / (d * d - 1)
        radius = 2 * k / (d * d - 1)
        return abs(a - center) - radius
    if abs(d) == 1:
        # half plane: alpha > n attracts for n - k = 1, alpha < -n for k - n = 1
        return n - a.real if d == 1 else a.real + n
    return 2 * k - abs(a - 1)  # n = k: attracting outside the disk |a-1| = 2k


def region_z1_ank(a, n, k, tol=DEFAULT_BOUNDARY_TOL) -> str:
    """Stability region of the fixed point z = 1 in the a plane."""
    v = _z1_signed_value(complex(a), n, k)
    if abs(v) <= tol:
        return "indifferent"
    return "attracting" if v < 0 else "repelling"


def region_zm1_ank(a, n, k, tol=DEFAULT_BOUNDARY_TOL) -> str:
    """Stability region of z = -1; it is only fixed when n + k is odd."""
    if (n + k) % 2 == 0:
        return "not_fixed"
    return region_z1_ank(-complex(a), n, k, tol)


def nu_zpm_a(alpha: float) -> float:
    """Half-height of the z_pm attracting region of the (4,1) family."""
    v = -5 - alpha * alpha + math.sqrt(1 + 20 * alpha * alpha)
    return math.sqrt(v) if v > 0 else 0.0


def region_zpm_a(a, tol=DEFAULT_BOUNDARY_TOL) -> str:
    """Joint stability region of the strange fixed points z_pm ((4,1) family)."""
    a = complex(a)
    al = abs(a.real)
    if 2 < al < math.sqrt(6):
        v = a.imag * a.imag - nu_zpm_a(a.real) ** 2
        if abs(v) <= tol:
            return "indifferent"
        return "attracting" if v < 0 else "repelling"
    if (abs(al - 2) <= tol or abs(al - math.sqrt(6)) <= tol) and abs(a.imag) <= tol:
        return "indifferent"
    return "repelling"


def zpm_curve_poly_b(alpha: float, beta: float) -> float:
    """Degree-8 real polynomial whose zero set carries |mult(z_pm)| = 1 (b plane)."""
    a, b2 = alpha, beta * beta
    t1 = (5 + 10 * a + a * a) * (-17 - 2 * a + 3 * a * a) * (
        -67 - 204 * a - 26 * a * a + 36 * a ** 3 + 5 * a ** 4)
    t2 = 4 * (8259 + 5994 * a + 1225 * a * a - 4 * a ** 3 + 709 * a ** 4
              + 186 * a ** 5 + 15 * a ** 6) * b2
    t3 = 2 * (6069 + 1508 * a + 1606 * a * a + 372 * a ** 3 + 45 * a ** 4) * b2 * b2
    t4 = 4 * (299 + 62 * a + 15 * a * a) * b2 ** 3 + 15 * b2 ** 4
    return t1 + t2 + t3 + t4


def behl_curve_values(b):
    """Signed boundary values (v_m1, v_p1, v_pm) for the raw parameter b.

    v_m1 and v_p1 are |multiplier| - 1 at z = -1 and z = 1; v_pm is the
    degree-8 curve polynomial evaluated at (Re b, Im b).  Components
    whose formulas degenerate at this b are returned as None.
    """
    b = complex(b)
    v_m1 = v_p1 = v_pm = None
    if b != -1:
        v_m1 = abs((9 + 14 * b + b * b) / (4 + 4 * b)) - 1.0
    if abs(b * b - 2 * b - 7) > 1e-12:  # b = 1 +- 2 sqrt(2)
        # multiplier of z = 1: 4 + (4b+4)/(b^2-2b-7)
        v_p1 = abs(4 + (4 * b + 4) / (b * b - 2 * b - 7)) - 1.0
    if b != 1 and b != -3:
        v_pm = zpm_curve_poly_b(b.real, b.imag)
    return (v_m1, v_p1, v_pm)


def antenna_intervals(n, k) -> AntennaIntervals:
    """Real parameter intervals where the free critical points sit on the circle."""
    if n == k:
        raise ValueError("no finite antenna bound for n = k")
    m = abs((n + k) / (n - k))
    return AntennaIntervals("a", [(-m, -1.0), (1.0, m)])


def antenna_b_image() -> AntennaIntervals:
    """The four b-plane intervals corresponding to the (4,1) antennas."""
    return AntennaIntervals("b", [
        (-math.inf, -7 - 2 * SQRT10),
        (-2.0, 1 - 2 * math.sqrt(2)),
        (-1.0, -7 + 2 * SQRT10),
        (3.0, 1 + 2 * math.sqrt(2)),
    ])


# ---------------------------------------------------------------------------
# boundary tracing


def _multiplier_value(query: StabilityRegionQuery, par: complex) -> float:
    """|multiplier| - 1 of the queried strange fixed point at this parameter."""
    n, k = query.n, query.k
    if query.parametrization == "a_general":
        if query.which_point == "z1":
            return abs(eval_ank_deriv(GeneralParams(par, n, k), 1.0)) - 1.0
        if query.which_point == "zm1":
            return abs(eval_ank_deriv(GeneralParams(par, n, k), -1.0)) - 1.0
        zp, zm = strange_fixed_zpm_ank41(par)
        p = GeneralParams(par, 4, 1)
        return max(abs(eval_ank_deriv(p, zp)), abs(eval_ank_deriv(p, zm))) - 1.0
    bp = BehlParams(par)
    if query.which_point == "z1":
        return abs(eval_b_deriv(bp, 1.0)) - 1.0
    if query.which_point == "zm1":
        return abs(eval_b_deriv(bp, -1.0)) - 1.0
    zp, zm = strange_fixed_zpm_b(par)
    return max(abs(eval_b_deriv(bp, zp)), abs(eval_b_deriv(bp, zm))) - 1.0


def _region_centers(query: StabilityRegionQuery):
    """Interior reference points of each region component (superattractors)."""
    n, k = query.n, query.k
    if query.parametrization == "a_general":
        if query.which_point == "z1":
            if abs(n - k) >= 2:
                return [complex((n + k) / (n - k))]
            if abs(n - k) == 1:
                return [complex(2 * n) if n - k == 1 else complex(-2 * n)]
            return [complex(1.0)]  # n = k: scan outward across the circle |a-1| = 2k
        if query.which_point == "zm1":
            return [-c for c in _region_centers(
                StabilityRegionQuery("z1", "a_general", n, k))]
        return [complex(SQRT5), complex(-SQRT5)]
    if query.which_point == "z1":
        return [complex(3.0), complex(-2.0)]
    if query.which_point == "zm1":
        return [complex(-7 + 2 * SQRT10), complex(-7 - 2 * SQRT10)]
    r1 = math.sqrt(10 - 2 * SQRT5)
    r2 = math.sqrt(10 + 2 * SQRT5)
    return [complex(-2 + SQRT5 + r1), complex(-2 + SQRT5 - r1),
            complex(-2 - SQRT5 + r2), complex(-2 - SQRT5 - r2)]


def _bisect_radial(value, center, direction, r_hi_start=0.05, r_max=200.0, tol=1e-10):
    """First sign change of value(center + r*direction) going outward."""

    def safe(par, fallback):
        try:
            v = value(par)
        except (ValueError, ZeroDivisionError):
            return fallback
        return fallback if math.isnan(v) else v

    v0 = value(center)
    if v0 == 0:
        return center
    sign0 = math.copysign(1.0, v0)
    r_lo, r_hi = 0.0, r_hi_start
    while r_hi < r_max:
        v = safe(center + r_hi * direction, v0)
        if math.copysign(1.0, v) != sign0:
            break
        r_lo = r_hi
        r_hi *= 1.5
    else:
        return None
    for _ in range(200):
        mid = 0.5 * (r_lo + r_hi)
        if r_hi - r_lo < tol * max(1.0, mid):
            break
        v = safe(center + mid * direction, -sign0)
        if math.copysign(1.0, v) != sign0:
            r_hi = mid
        else:
            r_lo = mid
    return center + 0.5 * (r_lo + r_hi) * direction


def trace_boundary(query: StabilityRegionQuery, samples: int = 256):
    """Boundary polylines of a stability region, one per component.

    Each component is traced by radial bisection from a superattracting
    interior point; points are ordered by scan angle.  Returns a list of
    (m, 2) float arrays (re, im columns).  Empty list when the region
    has no interior at the scanned centers.
    """
    if samples < 16:
        raise ValueError("samples must be >= 16")
    value = lambda par: _multiplier_value(query, par)
    components = []
    for center in _region_centers(query):
        pts = []
        for j in range(samples):
            th = 2 * math.pi * j / samples
            d = cmath.exp(1j * th)
            hit = _bisect_radial(value, center, d)
            if hit is not None:
                pts.append((hit.real, hit.imag))
        if pts:
            components.append(np.array(pts))
    return components


def boundary_to_csv(components, path):
    """Write traced boundary points as CSV with re, im columns."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["re", "im"])
        for comp in components:
            for re, im in comp:
                w.writerow([repr(float(re)), repr(float(im))])


def boundary_to_json(components, query: StabilityRegionQuery, path):
    doc = {
        "which_point": query.which_point,
        "parametrization": query.parametrization,
        "n": query.n,
        "k": query.k,
        "components": [comp.tolist() for comp in components],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
    return doc
