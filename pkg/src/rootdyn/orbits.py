"""Orbit iteration, escape classification, cycles and convergence order.

The escape engine works on numpy arrays so single seeds and whole pixel
grids share the exact same floating-point path; grids are therefore
bit-identical no matter how rendering work is divided.

For real parameters the unit circle is invariant and the free critical
points can lie exactly on it.  Double-precision rounding off the circle
is amplified exponentially by the circle dynamics, so seeds detected on
the invariant circle are projected back to it after every step; this is
the numerically honest reading of "the orbit can never leave the
circle", not a behavioral change.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fixedpoints import critical_points_b, critical_set_ank
from .operators import BehlParams, GeneralParams, eval_ank, eval_ank_deriv, eval_b, eval_b_deriv
from .sphere import SpherePoint, sphere

#: tolerance for deciding a seed sits on the invariant unit circle
CIRCLE_SNAP = 1e-9

OUTCOME_UNDECIDED = 0
OUTCOME_TO_ZERO = 1
OUTCOME_TO_INFINITY = 2
OUTCOME_TO_STRANGE = 3

OUTCOME_NAMES = {
    OUTCOME_UNDECIDED: "undecided",
    OUTCOME_TO_ZERO: "to_zero",
    OUTCOME_TO_INFINITY: "to_infinity",
    OUTCOME_TO_STRANGE: "to_strange",
}


@dataclass
class EscapeConfig:
    max_iter: int = 100
    eps_zero: float = 1e-8
    eps_inf: float = 1e8

    def __post_init__(self):
        if not (self.eps_zero < 1.0 < self.eps_inf):
            raise ValueError("need eps_zero < 1 < eps_inf")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


@dataclass
class OrbitClassification:
    outcome: str  # to_zero | to_infinity | to_strange | undecided
    iterations: int
    witness: SpherePoint
    attractor_id: int | None = None
    flagged: bool = False


@dataclass
class CycleReport:
    period: int
    representative: complex
    multiplier: complex


def step_general(z, a, n, k):
    """One vectorized application of the general operator (array in/out)."""
    with np.errstate(all="ignore"):
        w = z ** n * ((z - a) / (1.0 - a * z)) ** k
    return np.where(np.isfinite(w), w, np.inf + 0j)


def step_behl(z, b):
    """One vectorized application of the raw-parameter operator."""
    with np.errstate(all="ignore"):
        A = b * b - 6 * b - 11
        B = b * b + 2 * b - 3
        w = z ** 4 * (A + B * z) / (B + A * z)
    return np.where(np.isfinite(w), w, np.inf + 0j)


def escape_orbits(step, z0, cfg: EscapeConfig, on_circle=None, attractors=None):
    """Classify many orbits at once under the escape-time rules.

    step: callable (values, indices) -> next values, where indices are
    the flat positions of the still-active orbits (needed when the map
    varies per seed, as in a parameter plane); constant-parameter steps
    can ignore the second argument.
    on_circle: boolean mask of seeds that must be kept on the unit circle.
    attractors: optional complex array of known finite attractor points;
    staying within 1e-6 of one for 3 consecutive steps classifies the
    orbit as captured by it.

    Returns (outcome, iterations, witness, attractor_id) arrays.
    """
    z = np.array(z0, dtype=complex)
    shape = z.shape
    z = z.ravel()
    outcome = np.zeros(z.shape, np.uint8)
    iters = np.zeros(z.shape, np.int32)
    attr_id = np.full(z.shape, -1, np.int32)
    active = np.ones(z.shape, bool)
    if on_circle is None:
        circ = np.zeros(z.shape, bool)
    else:
        circ = np.asarray(on_circle, bool).ravel().copy()
    with np.errstate(all="ignore"):
        z[circ] /= np.abs(z[circ])
    near = np.zeros(z.shape, np.int8)
    alist = None
    if attractors is not None and len(attractors):
        alist = np.asarray(attractors, dtype=complex)

    for m in range(1, cfg.max_iter + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        w = step(z[idx], idx)
        oc = circ[idx]
        if oc.any():
            aw = np.abs(w[oc])
            w[oc] = np.where(aw > 0, w[oc] / np.where(aw > 0, aw, 1.0), w[oc])
        z[idx] = w
        aw = np.abs(w)
        hit0 = aw < cfg.eps_zero
        hitI = ~hit0 & ((aw > cfg.eps_inf) | ~np.isfinite(aw))
        outcome[idx[hit0]] = OUTCOME_TO_ZERO
        outcome[idx[hitI]] = OUTCOME_TO_INFINITY
        done = hit0 | hitI
        if alist is not None:
            d = np.min(np.abs(w[:, None] - alist[None, :]), axis=1)
            which = np.argmin(np.abs(w[:, None] - alist[None, :]), axis=1)
            close = d < 1e-6
            near[idx] = np.where(close, near[idx] + 1, 0)
            caught = (near[idx] >= 3) & ~done
            outcome[idx[caught]] = OUTCOME_TO_STRANGE
            attr_id[idx[caught]] = which[caught].astype(np.int32)
            done = done | caught
        iters[idx[done]] = m
        active[idx[done]] = False
    iters[active] = cfg.max_iter
    return (outcome.reshape(shape), iters.reshape(shape),
            z.reshape(shape), attr_id.reshape(shape))


def _single(step, z0, cfg, on_circle=False, attractors=None, flagged=False):
    out, it, wit, aid = escape_orbits(
        step, np.array([z0], complex), cfg,
        on_circle=np.array([on_circle]), attractors=attractors)
    aid = int(aid[0])
    return OrbitClassification(
        OUTCOME_NAMES[int(out[0])], int(it[0]), sphere(complex(wit[0])),
        attractor_id=aid if aid >= 0 else None, flagged=flagged)


def free_critical_seed(p):
    """The free critical point c_+ and whether it sits on the invariant circle."""
    if isinstance(p, GeneralParams):
        if p.monomial or p.degenerate:
            return None, False
        cp = critical_set_ank(p).free[0]
        onc = p.a.imag == 0 and abs(abs(cp) - 1.0) < CIRCLE_SNAP
        return cp, onc
    if p.degenerate or p.b * p.b - 6 * p.b - 11 == 0:
        return None, False
    cp = critical_points_b(p.b)[0]
    onc = p.b.imag == 0 and abs(abs(cp) - 1.0) < CIRCLE_SNAP
    return cp, onc


def _step_for(p):
    if isinstance(p, GeneralParams):
        return lambda z, idx=None: step_general(z, p.a, p.n, p.k)
    return lambda z, idx=None: step_behl(z, p.b)


def classify_critical_orbit(p, cfg: EscapeConfig | None = None) -> OrbitClassification:
    """Iterate the free critical point c_+ under the escape-time rules.

    Degenerate parameters reduce to a monomial with no free critical
    point; the orbit is then reported undecided and flagged.
    """
    if cfg is None:
        cfg = EscapeConfig()
    cp, onc = free_critical_seed(p)
    if cp is None:
        return OrbitClassification("undecided", 0, sphere(1.0), flagged=True)
    return _single(_step_for(p), cp, cfg, on_circle=onc)


def classify_seed(p, z0, cfg: EscapeConfig | None = None, known_attractors=()):
    """Classify the orbit of an arbitrary seed of the dynamical plane."""
    if cfg is None:
        cfg = EscapeConfig()
    z0 = sphere(z0).to_complex()
    real_par = (p.a.imag == 0) if isinstance(p, GeneralParams) else (p.b.imag == 0)
    onc = real_par and abs(abs(z0) - 1.0) < CIRCLE_SNAP
    attractors = np.asarray(list(known_attractors), complex) if known_attractors else None
    return _single(_step_for(p), z0, cfg, on_circle=onc, attractors=attractors,
                   flagged=getattr(p, "degenerate", False))


def _sphere_step(p):
    if isinstance(p, GeneralParams):
        return lambda z: eval_ank(p, z)
    return lambda z: eval_b(p, z)


def _sphere_deriv(p):
    if isinstance(p, GeneralParams):
        return lambda z: eval_ank_deriv(p, z)
    return lambda z: eval_b_deriv(p, z)


def detect_cycle(p, seed, burn_in=1000, max_period=8, tol=1e-9):
    """Attracting-cycle detection after a settling phase.

    Returns the minimal period whose return distance is below tol, with
    the cycle multiplier (product of derivatives along the cycle), or
    None when the orbit escapes or no period fits.
    """
    if burn_in < 0 or max_period < 1:
        raise ValueError("need burn_in >= 0 and max_period >= 1")
    step = _sphere_step(p)
    z = sphere(seed)
    for _ in range(burn_in):
        z = step(z)
        if z.modulus() < 1e-12 or z.modulus() > 1e12:
            return None  # escaped toward a root basin during burn-in
    w0 = z.to_complex()
    pts = []
    w = z
    for period in range(1, max_period + 1):
        pts.append(w.to_complex())
        w = step(w)
        if abs(w.to_complex() - w0) < tol:
            deriv = _sphere_deriv(p)
            mult = 1.0 + 0j
            for q in pts:
                mult *= deriv(q)
            return CycleReport(period, w0, mult)
    return None


def empirical_order(step, root, seed, iters=25, floor=None):
    """Computational order of convergence from successive error ratios.

    step is any one-point iteration map; it may operate on mpmath
    numbers, in which case the error floor adapts to the working
    precision.  Raises when no usable decreasing error triple exists.
    """
    if abs(complex(seed) - complex(root)) > 0.5:
        raise ValueError("order not measurable: seed too far from root")
    if floor is None:
        floor = _error_floor(seed)
    errs = [abs(seed - root)]
    x = seed
    for _ in range(iters):
        x = step(x)
        e = abs(x - root)
        errs.append(e)
        if e == 0 or e < floor:
            break
    lam = None
    for m in range(1, len(errs) - 1):
        if errs[m + 1] >= floor and errs[m + 1] < errs[m] < errs[m - 1]:
            lam = (math.log(float(errs[m + 1] / errs[m]))
                   / math.log(float(errs[m] / errs[m - 1])))
    if lam is None:
        raise ValueError("order not measurable: errors collapse too fast "
                         "(try an extended-precision step)")
    return lam


def _error_floor(x):
    try:
        import mpmath
        if isinstance(x, (mpmath.mpf, mpmath.mpc)):
            return mpmath.mpf(10) ** (-(mpmath.mp.dps - 15))
    except ImportError:
        pass
    return 1e-13


def unit_circle_drift(a: float, nk, theta_samples=1024, iters=50):
    """Largest one-step deviation from the unit circle along circle orbits.

    Each iterate is measured right after one operator application and
    then retracted to the circle, so the reported drift is the per-step
    non-invariance and is not swamped by exponential error growth along
    chaotic circle orbits.  For real parameters it stays at rounding
    level; for non-real parameters it is O(1).
    """
    n, k = nk
    a = complex(a)
    th = 2 * np.pi * np.arange(theta_samples) / theta_samples
    w = np.exp(1j * th)
    drift = 0.0
    for _ in range(iters):
        w = step_general(w, a, n, k)
        aw = np.abs(w)
        good = np.isfinite(aw) & (aw > 0)
        if good.any():
            drift = max(drift, float(np.max(np.abs(aw[good] - 1.0))))
        if not good.all():
            drift = math.inf
        w = np.where(good, w / np.where(good, aw, 1.0), 1.0 + 0j)
    return drift
