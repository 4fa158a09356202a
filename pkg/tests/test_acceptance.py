"""Acceptance suite: 12 numbered criteria, one printed pass/fail line each.

Run with plain pytest; the per-criterion lines are printed outside the
capture so they always appear in the terminal output.
"""

import math
import time

import mpmath
import numpy as np
import pytest

from rootdyn.fixedpoints import (
    critical_set_ank,
    fixed_points_ank,
    multiplier_and_class,
    strange_fixed_zpm_ank41,
    strange_fixed_zpm_b,
)
from rootdyn.operators import (
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
from rootdyn.orbits import EscapeConfig, classify_critical_orbit, empirical_order, unit_circle_drift
from rootdyn.render import GridSpec, Window, pixel_centers, render_dynamical_plane, render_parameter_plane
from rootdyn.sphere import SpherePoint, chordal
from rootdyn.stability import antenna_intervals, region_z1_ank

SQRT5 = math.sqrt(5.0)
SQRT10 = math.sqrt(10.0)


def announce(num, name, ok, detail=""):
    line = "ACCEPTANCE %2d %-28s %s  %s" % (num, name, "PASS" if ok else "FAIL", detail)
    print(line)


@pytest.fixture
def loud(capfd):
    # print the pass/fail line to the real terminal, not the capture buffer
    return capfd.disabled


def rand_c(rng, n, scale=2.0):
    return scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n))


def test_criterion_01_conjugacy(loud):
    t0 = time.perf_counter()
    rng = np.random.default_rng(101)
    t = QuadraticTarget(1.0)
    worst = 0.0
    tested = 0
    while tested < 20:
        b = complex(rand_c(rng, 1, 3.0)[0])
        if min(abs(b - d) for d in BEHL_DEGENERATE) < 0.2:
            continue
        tested += 1
        pb = BehlParams(b)
        for x in rand_c(rng, 100):
            x = complex(x)
            try:
                y = behl_step(b, t, x)
            except ValueError:
                continue
            err = chordal(moebius_h(t, y), eval_b(pb, moebius_h(t, x)))
            worst = max(worst, err)
    dt = time.perf_counter() - t0
    ok = worst < 1e-9 and dt < 1.0
    with loud():
        announce(1, "conjugacy h o step = O_b o h", ok,
                 "worst %.2e, %.2fs" % (worst, dt))
    assert ok


def test_criterion_02_reparam_coherence(loud):
    rng = np.random.default_rng(202)
    worst_rt = worst_op = 0.0
    for a in rand_c(rng, 1000, 2.5):
        a = complex(a)
        if abs(a + 1) < 1e-6:
            continue
        for b in reparam_b_of_a(a):
            if not (math.isfinite(b.real) and math.isfinite(b.imag)):
                continue
            worst_rt = max(worst_rt, abs(reparam_a_of_b(b) - a))
    for _ in range(25):
        a = complex(rand_c(rng, 1, 2.5)[0])
        if abs(a - 1) < 0.05 or abs(a + 1) < 0.05:
            continue
        p5 = GeneralParams(a, 4, 1)
        for b in reparam_b_of_a(a):
            pb = BehlParams(b)
            for z in rand_c(rng, 20):
                worst_op = max(worst_op, chordal(eval_b(pb, complex(z)),
                                                 eval_ank(p5, complex(z))))
    ok = worst_rt < 1e-10 and worst_op < 1e-9
    with loud():
        announce(2, "reparametrization coherence", ok,
                 "round-trip %.2e, operator %.2e" % (worst_rt, worst_op))
    assert ok


def test_criterion_03_superattractor_table(loud):
    cases = []
    for b in (-7 + 2 * SQRT10, -7 - 2 * SQRT10):
        cases.append((BehlParams(b), -1.0))
    for b in (-2.0, 3.0):
        cases.append((BehlParams(b), 1.0))
    r1 = math.sqrt(10 - 2 * SQRT5)
    r2 = math.sqrt(10 + 2 * SQRT5)
    for b in (-2 + SQRT5 + r1, -2 + SQRT5 - r1,
              -2 - SQRT5 + r2, -2 - SQRT5 - r2):
        cases.append((BehlParams(b), strange_fixed_zpm_b(b)[0]))
    cases.append((GeneralParams(5 / 3, 4, 1), 1.0))
    cases.append((GeneralParams(-5 / 3, 4, 1), -1.0))
    for a in (SQRT5, -SQRT5):
        cases.append((GeneralParams(a, 4, 1), strange_fixed_zpm_ank41(a)[0]))
    for n, k in ((4, 1), (6, 2), (5, 2), (7, 2)):
        cases.append((GeneralParams((n + k) / (n - k), n, k), 1.0))
    worst = max(abs(multiplier_and_class(p, z).multiplier) for p, z in cases)
    ok = worst < 1e-9
    with loud():
        announce(3, "superattractor fixture table", ok,
                 "%d fixtures, worst |mult| %.2e" % (len(cases), worst))
    assert ok


def test_criterion_04_predicate_vs_multiplier(loud):
    t0 = time.perf_counter()
    rng = np.random.default_rng(404)
    total = bad = 0
    for n, k in ((4, 1), (2, 2), (3, 2), (7, 2)):
        pars = rand_c(rng, 10000, 3.0)
        for a in pars:
            a = complex(a)
            pred = region_z1_ank(a, n, k)
            if pred == "indifferent":
                continue
            try:
                lam = abs(eval_ank_deriv(GeneralParams(a, n, k), 1.0))
            except ValueError:
                continue
            if abs(lam - 1.0) < 1e-6:  # boundary band excluded
                continue
            total += 1
            truth = "attracting" if lam < 1 else "repelling"
            bad += truth != pred
    dt = time.perf_counter() - t0
    agree = 1.0 - bad / max(total, 1)
    ok = agree >= 0.999 and dt < 5.0
    with loud():
        announce(4, "predicate vs multiplier", ok,
                 "agreement %.5f on %d samples, %.2fs" % (agree, total, dt))
    assert ok


def test_criterion_05_circle_invariance(loud):
    worst = 0.0
    for a in (0.3, 1.2, -1.4, 1.9):
        for nk in ((4, 1), (3, 2), (6, 2)):
            worst = max(worst, unit_circle_drift(a, nk, 4096, 50))
    ok = worst < 1e-8
    with loud():
        announce(5, "unit-circle invariance", ok, "max drift %.2e" % worst)
    assert ok


def test_criterion_06_antenna_properties(loud):
    bad_mod = 0.0
    undecided = total = 0
    for n, k in ((4, 1), (6, 2)):
        for lo, hi in antenna_intervals(n, k).intervals:
            for a in np.linspace(lo + 1e-6, hi - 1e-6, 50):
                cp, cm = critical_set_ank(GeneralParams(a, n, k)).free
                bad_mod = max(bad_mod, abs(abs(cp) - 1), abs(abs(cm) - 1))
                total += 1
                r = classify_critical_orbit(GeneralParams(a, n, k))
                undecided += r.outcome == "undecided"
    b_undecided = 0
    b_edge = -7 - 2 * SQRT10
    for b in np.linspace(b_edge - 0.5, b_edge - 40, 20):
        r = classify_critical_orbit(BehlParams(b))
        b_undecided += r.outcome == "undecided"
    ok = bad_mod < 1e-10 and undecided == total and b_undecided == 20
    with loud():
        announce(6, "antenna properties", ok,
                 "|c|-1 max %.2e, undecided %d/%d + %d/20 behl"
                 % (bad_mod, undecided, total, b_undecided))
    assert ok


def test_criterion_07_convergence_order(loud):
    t0 = time.perf_counter()
    old = mpmath.mp.dps
    mpmath.mp.dps = 120
    try:
        t = QuadraticTarget(1.0)
        root = mpmath.mpc(0, 1)
        seed = mpmath.mpc(0, "0.95")  # within 0.1 of the root
        measured = []
        for b, want in ((mpmath.mpf(2), 4.0),
                        (mpmath.mpc("0.5", "0.5"), 4.0),
                        (3 + 2 * mpmath.sqrt(5), 5.0),
                        (3 - 2 * mpmath.sqrt(5), 5.0)):
            lam = empirical_order(lambda x: behl_step(b, t, x), root, seed)
            measured.append((float(lam), want))
    finally:
        mpmath.mp.dps = old
    dt = time.perf_counter() - t0
    ok = all(abs(lam - want) < 0.3 for lam, want in measured) and dt < 1.0
    with loud():
        announce(7, "empirical convergence order", ok,
                 ", ".join("%.3f/%g" % m for m in measured) + ", %.2fs" % dt)
    assert ok


def test_criterion_08_fixed_point_solver(loud):
    rng = np.random.default_rng(808)
    worst_set = 0.0
    for _ in range(100):
        a = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        if abs(a - 1) < 0.02 or abs(a + 1) < 0.02:
            continue
        reps = fixed_points_ank(GeneralParams(a, 4, 1))
        got = [r.location.to_complex() for r in reps
               if not r.location.is_infinity]
        zp, zm = strange_fixed_zpm_ank41(a)
        expect = [0.0, 1.0, -1.0, zp, zm]
        d = max(min(abs(g - e) for g in got) for e in expect)
        d = max(d, max(min(abs(g - e) for e in expect) for g in got))
        worst_set = max(worst_set, d)
    worst_res = 0.0
    counts_ok = True
    for _ in range(20):
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(a - 1) < 0.05 or abs(a + 1) < 0.05:
            continue
        n = int(rng.integers(2, 7))
        k = int(rng.integers(1, 5))
        p = GeneralParams(a, n, k)
        reps = fixed_points_ank(p)
        counts_ok &= sum(r.multiplicity for r in reps) == n + k + 1
        for r in reps:
            worst_res = max(worst_res, chordal(eval_ank(p, r.location),
                                               r.location))
    ok = worst_set < 1e-9 and worst_res < 1e-9 and counts_ok
    with loud():
        announce(8, "fixed-point solver oracle", ok,
                 "set dist %.2e, residual %.2e, counts %s"
                 % (worst_set, worst_res, counts_ok))
    assert ok


def test_criterion_09_semiconjugacy(loud):
    rng = np.random.default_rng(909)
    worst = worst_branch = 0.0
    for _ in range(10):
        a = complex(rand_c(rng, 1)[0])
        n = int(rng.integers(2, 7))
        k = int(rng.integers(1, 5))
        p = GeneralParams(a, n, k)
        for z in rand_c(rng, 100):
            z = complex(z)
            r = eval_R(p, z)
            rm = eval_R(p, -z)
            worst = max(worst, chordal(SpherePoint(-rm.value, rm.inverted), r))
            s = eval_S(p, z * z)
            worst = max(worst, chordal(s, SpherePoint(r.value ** 2, r.inverted)))
            worst_branch = max(worst_branch, chordal(
                SpherePoint(r.value ** 2, r.inverted),
                SpherePoint(rm.value ** 2, rm.inverted)))
    ok = worst < 1e-10 and worst_branch < 1e-12
    with loud():
        announce(9, "semiconjugacy identities", ok,
                 "identity %.2e, branch %.2e" % (worst, worst_branch))
    assert ok


def test_criterion_10_figure_reproduction(loud):
    t0 = time.perf_counter()
    win = Window(-3.2, 3.2, -3.2, 3.2)
    gs = GridSpec(301, 301)
    plane = render_parameter_plane("general", win, gs, threads=1, nk=(4, 1))
    dt = time.perf_counter() - t0
    pts = pixel_centers(win, gs)
    black = plane.outcome == 0
    pix = 6.4 / 301

    m1 = (np.abs(pts - 1.75) < 0.2) | (np.abs(pts + 1.75) < 0.2)
    f1 = black[m1].mean()
    m2 = ((pts.real >= 2.06) & (pts.real <= 2.35) & (np.abs(pts.imag) <= 0.03))
    f2 = black[m2].mean()
    # real-axis-adjacent = the pixels whose cell contains the real axis
    m3 = ((np.abs(pts.real) > 1.05) & (np.abs(pts.real) < 1.6)
          & (np.abs(pts.imag) < pix / 2))
    f3 = black[m3].mean()
    m4 = (np.abs(pts) < 0.5) & ~(plane.flags.astype(bool))
    f4 = 1.0 - black[m4].mean()

    ok = f1 >= 0.95 and f2 >= 0.90 and f3 >= 0.95 and f4 >= 0.99 and dt < 30.0
    with loud():
        announce(10, "figure reproduction 301x301", ok,
                 "fracs %.3f/%.3f/%.3f/%.3f, %.2fs" % (f1, f2, f3, f4, dt))
    assert ok


def test_criterion_11_determinism(loud):
    win = Window(-3.2, 3.2, -3.2, 3.2)
    gs = GridSpec(151, 151)
    planes = [render_parameter_plane("general", win, gs, threads=t, nk=(4, 1))
              for t in (1, 4, 8, 1)]  # last one: second consecutive run
    same = all(np.array_equal(planes[0].outcome, p.outcome)
               and np.array_equal(planes[0].iterations, p.iterations)
               and np.array_equal(planes[0].flags, p.flags)
               for p in planes[1:])
    with loud():
        announce(11, "determinism across threads", same,
                 "threads 1/4/8 + rerun identical: %s" % same)
    assert same


def test_criterion_12_small_basin(loud):
    from scipy import ndimage
    from scipy.spatial import ConvexHull

    win = Window(-0.02, 0.02, -0.02, 0.02)
    gs = GridSpec(601, 601)
    plane = render_dynamical_plane(GeneralParams(-10, 3, 5), win, gs)
    to_zero = plane.outcome == 1
    labels, _ = ndimage.label(to_zero)
    center = labels[300, 300]
    ok = center != 0
    diam = math.nan
    if ok:
        pts = pixel_centers(win, gs)
        comp = pts[labels == center]
        xy = np.column_stack([comp.real, comp.imag])
        hull = ConvexHull(xy)
        hp = xy[hull.vertices]
        diam = max(np.max(np.hypot(*(hp[i] - hp).T)) for i in range(len(hp)))
        ok = diam < 1e-2
    with loud():
        announce(12, "small immediate basin", ok, "diameter %.5f" % diam)
    assert ok
