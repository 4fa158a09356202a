"""Self-check suite: symmetries, conjugacies, invariants, order measurements.

Each check returns (name, passed, detail).  The CLI `verify` command runs
them all (or a filtered subset) and fails the process if any check fails.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .fixedpoints import multiplier_and_class, strange_fixed_zpm_ank41, strange_fixed_zpm_b
from .operators import (
    BEHL_DEGENERATE,
    BehlParams,
    GeneralParams,
    QuadraticTarget,
    behl_step,
    eval_R,
    eval_S,
    eval_ank,
    eval_ank_deriv,
    eval_b,
    moebius_h,
    reparam_a_of_b,
    reparam_b_of_a,
)
from .orbits import classify_seed, empirical_order, unit_circle_drift
from .sphere import SpherePoint, chordal, sphere
from .stability import region_z1_ank

SQRT5 = math.sqrt(5.0)
SQRT10 = math.sqrt(10.0)


def _rand_complex(rng, n, scale=2.0):
    return scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n))


def check_conjugacy(rng, inject_reparam_error=0.0):
    """h conjugates one method step on z^2+1 to the rational operator."""
    t = QuadraticTarget(1.0)
    worst = 0.0
    for _ in range(20):
        b = complex(_rand_complex(rng, 1)[0])
        if min(abs(b - d) for d in BEHL_DEGENERATE) < 0.2:
            continue
        p = BehlParams(b)
        for x in _rand_complex(rng, 100):
            try:
                y = behl_step(b, t, complex(x))
            except ValueError:
                continue
            lhs = moebius_h(t, y)
            rhs = eval_b(p, moebius_h(t, complex(x)))
            worst = max(worst, chordal(lhs, rhs))
    return worst < 1e-9, "max chordal mismatch %.3g" % worst


def check_reparam(rng, inject_reparam_error=0.0):
    """Both branches of b(a) round-trip through a(b), and operators agree."""
    worst = 0.0
    for a in _rand_complex(rng, 200):
        a = complex(a)
        if abs(a + 1) < 1e-3 or abs(a - 1) < 1e-3:
            continue
        for b in reparam_b_of_a(a):
            if not cmath.isfinite(b):
                continue
            a_back = reparam_a_of_b(b) + inject_reparam_error
            worst = max(worst, abs(a_back - a) / max(1.0, abs(a)))
            p5 = GeneralParams(a, 4, 1)
            pb = BehlParams(b)
            for z in _rand_complex(rng, 5):
                worst = max(worst, chordal(eval_b(pb, complex(z)),
                                           eval_ank(p5, complex(z))))
    return worst < 1e-9, "max round-trip/operator error %.3g" % worst


def check_inversion_symmetry(rng, **_):
    """O(1/z) = 1/O(z) on the sphere for both families."""
    worst = 0.0
    for _ in range(10):
        a = complex(_rand_complex(rng, 1)[0])
        n = int(rng.integers(2, 6))
        k = int(rng.integers(1, 4))
        p = GeneralParams(a, n, k)
        for z in _rand_complex(rng, 30):
            z = complex(z)
            if z == 0:
                continue
            worst = max(worst, chordal(eval_ank(p, 1 / z),
                                       eval_ank(p, z).inverse()))
    return worst < 1e-9, "max chordal asymmetry %.3g" % worst


def check_circle_invariance(**_):
    """Real parameters leave the unit circle invariant (per-step drift)."""
    worst = 0.0
    for a in (0.3, 1.2, -1.4, 1.9):
        for nk in ((4, 1), (3, 2), (6, 2)):
            worst = max(worst, unit_circle_drift(a, nk, 1024, 50))
    control = unit_circle_drift(0.5 + 0.1j, (4, 1), 256, 5)
    ok = worst < 1e-8 and control > 1e-3
    return ok, "real drift %.3g, complex control drift %.3g" % (worst, control)


def check_superattractors(**_):
    """Every tabulated superattracting configuration has |multiplier| ~ 0."""
    worst = 0.0
    cases = []
    for b in (-7 + 2 * SQRT10, -7 - 2 * SQRT10):
        cases.append((BehlParams(b), -1.0))
    for b in (-2.0, 3.0):
        cases.append((BehlParams(b), 1.0))
    r1 = math.sqrt(10 - 2 * SQRT5)
    r2 = math.sqrt(10 + 2 * SQRT5)
    for b in (-2 + SQRT5 + r1, -2 + SQRT5 - r1, -2 - SQRT5 + r2, -2 - SQRT5 - r2):
        zp, _ = strange_fixed_zpm_b(b)
        cases.append((BehlParams(b), zp))
    cases.append((GeneralParams(5 / 3, 4, 1), 1.0))
    cases.append((GeneralParams(-5 / 3, 4, 1), -1.0))
    for a in (SQRT5, -SQRT5):
        zp, _ = strange_fixed_zpm_ank41(a)
        cases.append((GeneralParams(a, 4, 1), zp))
    for n, k in ((4, 1), (6, 2), (5, 2), (7, 2)):
        cases.append((GeneralParams((n + k) / (n - k), n, k), 1.0))
    for p, z in cases:
        rep = multiplier_and_class(p, z)
        worst = max(worst, abs(rep.multiplier))
    return worst < 1e-9, "max |multiplier| over %d fixtures: %.3g" % (len(cases), worst)


def check_predicate_multiplier(rng, **_):
    """Region predicate for z=1 agrees with the direct multiplier test."""
    bad = total = 0
    for n, k in ((4, 1), (2, 2), (3, 2), (7, 2)):
        a = _rand_complex(rng, 2000, scale=3.0)
        for av in a:
            av = complex(av)
            pred = region_z1_ank(av, n, k)
            if pred == "indifferent":
                continue
            try:
                lam = abs(eval_ank_deriv(GeneralParams(av, n, k), 1.0))
            except ValueError:
                continue
            if abs(lam - 1.0) < 1e-6:
                continue
            total += 1
            truth = "attracting" if lam < 1 else "repelling"
            bad += pred != truth
    frac = bad / max(total, 1)
    return frac < 1e-3, "%d/%d disagreements" % (bad, total)


def check_semiconjugacy(rng, **_):
    """R is odd and S(z^2) = R(z)^2 with branch-independent square roots."""
    worst = 0.0
    for _ in range(10):
        a = complex(_rand_complex(rng, 1)[0])
        n = int(rng.integers(2, 6))
        k = int(rng.integers(1, 4))
        p = GeneralParams(a, n, k)
        for z in _rand_complex(rng, 20):
            z = complex(z)
            try:
                worst = max(worst, chordal(eval_R(p, -z), _neg(eval_R(p, z))))
                worst = max(worst, chordal(eval_S(p, z * z),
                                           _sq(eval_R(p, z))))
            except ZeroDivisionError:
                continue
    return worst < 1e-9, "max identity error %.3g" % worst


def _neg(pt: SpherePoint) -> SpherePoint:
    return SpherePoint(-pt.value, pt.inverted)


def _sq(pt: SpherePoint) -> SpherePoint:
    return sphere(SpherePoint(pt.value ** 2, pt.inverted))


def check_inversion_pairing(rng, **_):
    """classify(z) and classify(1/z) swap to_zero and to_infinity."""
    mism = total = 0
    for _ in range(5):
        a = complex(_rand_complex(rng, 1, scale=1.5)[0])
        p = GeneralParams(a, 4, 1)
        for z in _rand_complex(rng, 20):
            z = complex(z)
            if abs(z) < 1e-3 or abs(abs(z) - 1) < 1e-2:
                continue
            r1 = classify_seed(p, z)
            r2 = classify_seed(p, 1 / z)
            swap = {"to_zero": "to_infinity", "to_infinity": "to_zero"}
            total += 1
            if swap.get(r1.outcome, r1.outcome) != r2.outcome or \
                    (r1.outcome != "undecided" and r1.iterations != r2.iterations):
                mism += 1
    return mism == 0, "%d/%d pairs mismatched" % (mism, total)


def check_order(**_):
    """Convergence order 4 generically and 5 at the two special b values."""
    import mpmath
    old = mpmath.mp.dps
    mpmath.mp.dps = 120
    try:
        t = QuadraticTarget(1.0)
        root = mpmath.mpc(0, 1)
        results = []
        for b, seed, want in ((mpmath.mpf(2), mpmath.mpc(0, "0.9"), 4.0),
                              (mpmath.mpc("0.5", "0.5"), mpmath.mpc(0, "0.9"), 4.0),
                              (3 + 2 * mpmath.sqrt(5), mpmath.mpc(0, "0.95"), 5.0),
                              (3 - 2 * mpmath.sqrt(5), mpmath.mpc(0, "0.95"), 5.0)):
            lam = empirical_order(lambda x: behl_step(b, t, x), root, seed)
            results.append((float(lam), want))
        ok = all(abs(lam - want) < 0.3 for lam, want in results)
        return ok, "orders " + ", ".join("%.3f (want %g)" % r for r in results)
    finally:
        mpmath.mp.dps = old


ALL_CHECKS = [
    ("conjugacy", check_conjugacy),
    ("reparam", check_reparam),
    ("inversion-symmetry", check_inversion_symmetry),
    ("circle", check_circle_invariance),
    ("superattractors", check_superattractors),
    ("predicate", check_predicate_multiplier),
    ("semiconjugacy", check_semiconjugacy),
    ("pairing", check_inversion_pairing),
    ("order", check_order),
]


def run_checks(only=None, seed=12345, inject_reparam_error=0.0):
    """Run (a filtered subset of) all checks; returns list of result dicts."""
    results = []
    for name, fn in ALL_CHECKS:
        if only and only not in name:
            continue
        rng = np.random.default_rng(seed)
        try:
            ok, detail = fn(rng=rng, inject_reparam_error=inject_reparam_error) \
                if "rng" in fn.__code__.co_varnames else \
                fn(inject_reparam_error=inject_reparam_error)
        except Exception as exc:  # a crashed check is a failed check
            ok, detail = False, "raised %s: %s" % (type(exc).__name__, exc)
        results.append({"check": name, "passed": bool(ok), "detail": detail})
    return results
