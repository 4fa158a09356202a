import cmath
import math

import numpy as np
import pytest

from rootdyn.fixedpoints import (
    PolynomialRootConfig,
    SolverError,
    aberth_roots,
    classify_multiplier,
    cluster_roots,
    critical_points_b,
    critical_set_ank,
    fixed_points_ank,
    multiplier_and_class,
    strange_fixed_zpm_ank41,
    strange_fixed_zpm_b,
)
from rootdyn.operators import BehlParams, GeneralParams, eval_ank, reparam_a_of_b
from rootdyn.sphere import INF, chordal

RNG = np.random.default_rng(2024)


def rand_c(n, scale=2.0):
    return scale * (RNG.standard_normal(n) + 1j * RNG.standard_normal(n))


# ----------------------------------------------------------------- root solver

def test_aberth_on_known_polynomials():
    # roots of unity
    roots = aberth_roots([1, 0, 0, 0, 0, -1])
    expect = [cmath.exp(2j * cmath.pi * j / 5) for j in range(5)]
    for e in expect:
        assert min(abs(r - e) for r in roots) < 1e-10
    # Wilkinson-ish small case
    coeffs = np.poly([1, 2, 3, 4, 5, 6])
    roots = aberth_roots(coeffs)
    for e in range(1, 7):
        assert min(abs(r - e) for r in roots) < 1e-7


def test_aberth_random_polys_residuals():
    for deg in (3, 5, 8, 12):
        for _ in range(5):
            c = rand_c(deg + 1)
            c[0] += 3.0  # keep leading coefficient away from 0
            roots = aberth_roots(c)
            assert len(roots) == deg
            vals = np.abs(np.polyval(c, roots))
            scale = np.max(np.abs(c))
            assert np.max(vals) < 1e-7 * scale * 10 ** deg * 1e-3 or \
                np.max(vals) < 1e-6 * scale


def test_cluster_roots_multiplicity():
    merged = cluster_roots([1.0 + 0j, 1.0 + 1e-9j, 2.0 + 0j])
    ms = sorted(m for _, m in merged)
    assert ms == [1, 2]


# ----------------------------------------------------------- analytic fixtures

def test_strange_zpm_product_is_one():
    for a in rand_c(40, scale=3.0):
        zp, zm = strange_fixed_zpm_ank41(complex(a))
        assert abs(zp * zm - 1) < 1e-9
    for b in rand_c(40, scale=5.0):
        b = complex(b)
        if abs(b - 1) < 0.1 or abs(b + 3) < 0.1:
            continue
        zp, zm = strange_fixed_zpm_b(b)
        assert abs(zp * zm - 1) < 1e-7


def test_zpm_are_fixed_points():
    for a in rand_c(20, scale=3.0):
        a = complex(a)
        p = GeneralParams(a, 4, 1)
        for z in strange_fixed_zpm_ank41(a):
            assert chordal(eval_ank(p, z), z) < 1e-7


def test_zpm_on_unit_circle_in_antenna():
    # inside |a| < 2 real, z_pm are conjugate points on the unit circle
    zp, zm = strange_fixed_zpm_ank41(1.2)
    assert abs(abs(zp) - 1) < 1e-12 and abs(abs(zm) - 1) < 1e-12


def test_strange_zpm_b_error_cases():
    with pytest.raises(ValueError):
        strange_fixed_zpm_b(1.0)
    with pytest.raises(ValueError):
        critical_points_b(-3.0)


# ------------------------------------------------------------------ critical set

def test_critical_set_counts():
    for _ in range(20):
        a = complex(rand_c(1)[0])
        n, k = int(RNG.integers(2, 7)), int(RNG.integers(1, 5))
        cs = critical_set_ank(GeneralParams(a, n, k))
        assert cs.total_multiplicity() == 2 * (n + k) - 2


def test_critical_set_monomial_case():
    cs = critical_set_ank(GeneralParams(0, 4, 1))
    assert cs.monomial and cs.free is None


def test_free_critical_product_one():
    for _ in range(20):
        a = complex(rand_c(1)[0])
        if a == 0:
            continue
        n, k = int(RNG.integers(2, 7)), int(RNG.integers(1, 5))
        cp, cm = critical_set_ank(GeneralParams(a, n, k)).free
        assert abs(cp * cm - 1) < 1e-8


def test_critical_points_b_match_reparam():
    for b in rand_c(20, scale=4.0):
        b = complex(b)
        try:
            cb = critical_points_b(b)
        except ValueError:
            continue
        a = reparam_a_of_b(b)
        ca = critical_set_ank(GeneralParams(a, 4, 1)).free
        # sets agree up to ordering
        d = min(abs(cb[0] - ca[0]) + abs(cb[1] - ca[1]),
                abs(cb[0] - ca[1]) + abs(cb[1] - ca[0]))
        assert d < 1e-6 * max(1.0, abs(cb[0]), abs(cb[1]))


# ------------------------------------------------------------- multiplier class

def test_classify_multiplier_bands():
    assert classify_multiplier(0) == "superattracting"
    assert classify_multiplier(0.5) == "attracting"
    assert classify_multiplier(cmath.exp(0.3j)) == "indifferent"
    assert classify_multiplier(1.5) == "repelling"


def test_multiplier_at_zero_and_infinity():
    p = GeneralParams(0.7 + 0.1j, 4, 1)
    r0 = multiplier_and_class(p, 0)
    ri = multiplier_and_class(p, INF)
    assert r0.stability == "superattracting" and not r0.strange
    assert ri.stability == "superattracting" and not ri.strange


def test_multiplier_rejects_non_fixed():
    with pytest.raises(ValueError):
        multiplier_and_class(GeneralParams(0.7, 4, 1), 0.5 + 0.5j)


def test_superattracting_fixtures():
    cases = [
        (GeneralParams(5 / 3, 4, 1), 1.0),
        (GeneralParams(-5 / 3, 4, 1), -1.0),
        (BehlParams(3.0), 1.0),
        (BehlParams(-2.0), 1.0),
        (BehlParams(-7 + 2 * math.sqrt(10)), -1.0),
    ]
    for p, z in cases:
        assert abs(multiplier_and_class(p, z).multiplier) < 1e-9


# ------------------------------------------------------------------ fixed points

def test_fixed_points_ank_analytic_41():
    for a in rand_c(30, scale=1.5):
        a = complex(a)
        if abs(a - 1) < 0.05 or abs(a + 1) < 0.05:
            continue
        reps = fixed_points_ank(GeneralParams(a, 4, 1))
        finite = [r.location.to_complex() for r in reps
                  if not r.location.is_infinity]
        zp, zm = strange_fixed_zpm_ank41(a)
        expect = [0, 1, -1, zp, zm]
        assert len(finite) == 5
        for e in expect:
            assert min(abs(f - e) for f in finite) < 1e-8 * max(1, abs(e))


def test_fixed_points_residuals_random_nk():
    for _ in range(10):
        a = complex(rand_c(1)[0])
        if abs(a - 1) < 0.05 or abs(a + 1) < 0.05:
            continue
        n, k = int(RNG.integers(2, 7)), int(RNG.integers(1, 5))
        p = GeneralParams(a, n, k)
        reps = fixed_points_ank(p)
        assert sum(r.multiplicity for r in reps) == n + k + 1
        for r in reps:
            assert chordal(eval_ank(p, r.location), r.location) < 1e-7


def test_solver_error_carries_estimates():
    cfg = PolynomialRootConfig(max_iterations=1)
    with pytest.raises(SolverError) as exc:
        aberth_roots(np.poly(np.arange(1, 14)), cfg)
    assert len(exc.value.estimates) == 13
