"""Fixed points, critical points, multipliers and stability classes."""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .operators import BehlParams, GeneralParams, eval_ank, eval_ank_deriv, eval_b, eval_b_deriv
from .sphere import INF, SpherePoint, chordal, sphere

FIXED_RESIDUAL = 1e-8
CLUSTER_TOL = 1e-6


@dataclass
class PolynomialRootConfig:
    max_iterations: int = 200
    tolerance: float = 1e-12
    solver: str = "aberth"

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


@dataclass
class FixedPointReport:
    location: SpherePoint
    multiplier: complex
    stability: str  # superattracting | attracting | indifferent | repelling
    strange: bool
    multiplicity: int = 1


@dataclass
class CriticalSet:
    """All critical points of the general operator, with multiplicities."""

    fixed_critical: list  # [(SpherePoint, multiplicity)] for 0 and infinity
    preimage_critical: list  # [(SpherePoint, multiplicity)] for a and 1/a
    free: tuple | None  # (c_plus, c_minus), None when absorbed (a = 0)
    monomial: bool = False

    def total_multiplicity(self) -> int:
        tot = sum(m for _, m in self.fixed_critical)
        tot += sum(m for _, m in self.preimage_critical)
        if self.free is not None:
            tot += 2
        return tot


class SolverError(ValueError):
    """Simultaneous-iteration solver failed to converge."""

    def __init__(self, message, estimates):
        super().__init__(message)
        self.estimates = estimates


def aberth_roots(coeffs, cfg: PolynomialRootConfig | None = None, seed: int = 0):
    """All roots of a polynomial (coefficients highest degree first).

    Simultaneous Newton-type iteration with pairwise repulsion; starts
    from a perturbed circle so the initial guesses are never symmetric
    about a root configuration.  Deterministic for a fixed seed.
    """
    if cfg is None:
        cfg = PolynomialRootConfig()
    c = np.asarray(coeffs, dtype=complex)
    c = np.trim_zeros(c, "f")
    if c.size <= 1:
        return np.zeros(0, dtype=complex)
    c = c / c[0]
    deg = c.size - 1
    if deg == 1:
        return np.array([-c[1]])
    dc = c[:-1] * np.arange(deg, 0, -1)

    radius = 1.0 + np.max(np.abs(c[1:]))  # Cauchy bound
    rng = np.random.default_rng(seed)
    ang = 2 * np.pi * (np.arange(deg) + 0.35) / deg + 0.05 * rng.standard_normal(deg)
    rad = radius * (1.0 + 0.05 * rng.standard_normal(deg))
    z = rad * np.exp(1j * ang)

    for _ in range(cfg.max_iterations):
        p = np.polyval(c, z)
        dp = np.polyval(dc, z)
        ratio = np.where(dp != 0, p / np.where(dp != 0, dp, 1), 0.1 + 0.1j)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        rep = np.sum(1.0 / diff, axis=1)
        w = ratio / (1.0 - ratio * rep)
        z = z - w
        if np.max(np.abs(w) / (1.0 + np.abs(z))) < cfg.tolerance:
            return z
    raise SolverError("root solver did not converge", z)


def cluster_roots(roots, tol=CLUSTER_TOL):
    """Merge numerically coincident roots; returns [(value, multiplicity)]."""
    out = []
    for r in sorted(roots, key=lambda v: (v.real, v.imag)):
        for i, (v, m) in enumerate(out):
            if abs(r - v) < tol:
                out[i] = ((v * m + r) / (m + 1), m + 1)
                break
        else:
            out.append((r, 1))
    return out


def _fixed_point_poly(p: GeneralParams):
    """Coefficients (low order first) of z^n (z-a)^k - z (1-a z)^k."""
    from numpy.polynomial import polynomial as P

    t1 = P.polymul(P.polypow([-p.a, 1.0], p.k), [0.0] * p.n + [1.0])
    t2 = P.polymul(P.polypow([1.0, -p.a], p.k), [0.0, 1.0])
    n = max(len(t1), len(t2))
    t1 = np.pad(np.asarray(t1, complex), (0, n - len(t1)))
    t2 = np.pad(np.asarray(t2, complex), (0, n - len(t2)))
    return t1 - t2


def strange_fixed_zpm_ank41(a):
    """The extra fixed points z_pm = (a +- sqrt(a^2 - 4)) / 2 of the (4,1) map."""
    a = complex(a)
    s = cmath.sqrt(a * a - 4)
    return ((a + s) / 2, (a - s) / 2)


def strange_fixed_zpm_b(b):
    """Strange fixed points z_pm of the raw-parameter operator; z_+ z_- = 1."""
    b = complex(b)
    if b == 1 or b == -3:
        raise ValueError("formula undefined for b in {1, -3}")
    s = cmath.sqrt((5 + 10 * b + b * b) * (17 + 2 * b - 3 * b * b))
    den = 2 * (b - 1) * (b + 3)
    return ((11 + 6 * b - b * b + s) / den, (11 + 6 * b - b * b - s) / den)


def critical_set_ank(p: GeneralParams) -> CriticalSet:
    """Full critical set; total multiplicity is 2(n+k) - 2."""
    n, k, a = p.n, p.k, p.a
    if a == 0:
        # monomial z^(n+k): the free critical points are absorbed into 0/inf
        fixed = [(SpherePoint(0j), n + k - 1), (INF, n + k - 1)]
        return CriticalSet(fixed, [], None, monomial=True)
    fixed = [(SpherePoint(0j), n - 1), (INF, n - 1)]
    pre = []
    if k > 1:
        pre = [(sphere(a), k - 1), (sphere(1 / a), k - 1)]
    s = cmath.sqrt((a * a - 1) * ((n - k) ** 2 * a * a - (n + k) ** 2))
    cp = ((n + k) + (n - k) * a * a + s) / (2 * n * a)
    cm = ((n + k) + (n - k) * a * a - s) / (2 * n * a)
    return CriticalSet(fixed, pre, (cp, cm))


def critical_points_b(b):
    """Free critical points of the raw-parameter operator; c_+ = 1/c_-."""
    b = complex(b)
    if b == 1 or b == -3 or b * b - 6 * b - 11 == 0:
        raise ValueError("formula undefined for b in {1, -3, 3 +- 2 sqrt(5)}")
    num = -51 - 42 * b - 4 * b ** 2 + 2 * b ** 3 - b ** 4
    rad = (b - 3) * (b + 1) * (b + 2) * (b * b - 2 * b - 7) * (b * b + 14 * b + 9)
    den = (b - 1) * (b + 3) * (b * b - 6 * b - 11)
    s = 2 * cmath.sqrt(rad)
    return ((num + s) / den, (num - s) / den)


def _deriv_at(p, z):
    if isinstance(p, GeneralParams):
        return eval_ank_deriv(p, z)
    return eval_b_deriv(p, z)


def _eval_at(p, z):
    if isinstance(p, GeneralParams):
        return eval_ank(p, z)
    return eval_b(p, z)


def classify_multiplier(lam, tol_indiff=1e-9):
    m = abs(lam)
    if m < 1e-9:
        return "superattracting"
    if abs(m - 1.0) <= tol_indiff:
        return "indifferent"
    return "attracting" if m < 1.0 else "repelling"


def multiplier_and_class(p, z0, tol_indiff=1e-9) -> FixedPointReport:
    """Multiplier and stability class of a fixed point of the operator.

    At infinity the multiplier is taken from the inverted-chart map
    w -> 1/O(1/w); since the operator commutes with inversion that map
    is the operator itself, so the multiplier is the derivative at 0.
    """
    z0 = sphere(z0)
    img = _eval_at(p, z0)
    if chordal(img, z0) >= FIXED_RESIDUAL:
        raise ValueError("not a fixed point (residual %.3g)" % chordal(img, z0))
    if z0.is_infinity:
        lam = _deriv_at(p, SpherePoint(0j))
        strange = False
    else:
        lam = _deriv_at(p, z0)
        strange = not z0.is_zero
    return FixedPointReport(z0, lam, classify_multiplier(lam, tol_indiff), strange)


def fixed_points_ank(p: GeneralParams, cfg: PolynomialRootConfig | None = None):
    """All n+k+1 fixed points on the sphere, with multiplier and class.

    Infinity is always fixed; the rest are the roots of
    z^n (z-a)^k - z (1-a z)^k = 0 (z = 0 divided out and solved
    numerically).  Roots closer than the clustering tolerance are merged
    with combined multiplicity.
    """
    if cfg is None:
        cfg = PolynomialRootConfig()
    reports = [
        FixedPointReport(SpherePoint(0j), 0j, "superattracting", False),
        FixedPointReport(INF, 0j, "superattracting", False),
    ]
    if p.degenerate:
        # reduced map s z^n: finite nonzero fixed points solve z^(n-1) = 1/s
        s = -1.0 if (p.a == 1 and p.k % 2 == 1) else 1.0
        roots = [
            (1 / s) ** (1.0 / (p.n - 1)) * cmath.exp(2j * cmath.pi * j / (p.n - 1))
            for j in range(p.n - 1)
        ]
    else:
        coeffs = _fixed_point_poly(p)
        assert abs(coeffs[0]) == 0.0  # z = 0 is always a root
        reduced = coeffs[1:]
        roots = aberth_roots(reduced[::-1], cfg)
        # polish with a few Newton steps on the full polynomial
        c = reduced[::-1] / reduced[-1]
        dc = c[:-1] * np.arange(len(c) - 1, 0, -1)
        for _ in range(3):
            pv = np.polyval(c, roots)
            dv = np.polyval(dc, roots)
            roots = roots - np.where(dv != 0, pv / np.where(dv != 0, dv, 1), 0)
    for z, mult in cluster_roots(list(roots)):
        rep = multiplier_and_class(p, z)
        rep.multiplicity = mult
        reports.append(rep)
    return reports
