import cmath
import math

import numpy as np
import pytest

from rootdyn.sphere import (
    CHART_LIMIT,
    INF,
    ZERO,
    SpherePoint,
    chordal,
    ratio,
    sphere,
    sphere_eq,
)


def test_basic_points():
    assert ZERO.is_zero and not ZERO.is_infinity
    assert INF.is_infinity and not INF.is_zero
    assert INF.modulus() == math.inf
    assert math.isinf(INF.to_complex().real)


def test_chart_normalization():
    p = sphere(5.0 + 0j)
    assert p.inverted
    assert abs(p.to_complex() - 5.0) < 1e-15
    q = sphere(0.5 + 0.5j)
    assert not q.inverted
    # stored modulus never exceeds the chart limit
    rng = np.random.default_rng(7)
    for z in 100 * (rng.standard_normal(200) + 1j * rng.standard_normal(200)):
        assert abs(sphere(complex(z)).value) <= CHART_LIMIT + 1e-12


def test_inverse_is_involution():
    rng = np.random.default_rng(3)
    for z in rng.standard_normal(50) + 1j * rng.standard_normal(50):
        p = sphere(complex(z))
        assert sphere_eq(p.inverse().inverse(), p)
        if z != 0:
            assert abs(p.inverse().to_complex() - 1 / z) < 1e-12 * max(1, 1 / abs(z))


def test_ratio_overflow_safe():
    p = ratio(1.0, 1e-300)
    assert p.inverted
    assert p.modulus() > 1e299
    assert ratio(0.0, 3.0).is_zero
    assert ratio(2.0, 0.0).is_infinity
    with pytest.raises(ZeroDivisionError):
        ratio(0.0, 0.0)


def test_nan_and_inf_coerce_to_infinity():
    assert sphere(complex(math.inf, 0)).is_infinity
    assert sphere(complex(math.nan, 1)).is_infinity


def test_chordal_metric():
    assert chordal(0, 0) == 0
    assert abs(chordal(ZERO, INF) - 2.0) < 1e-15
    # symmetric and invariant under inversion
    rng = np.random.default_rng(11)
    zs = rng.standard_normal(20) + 1j * rng.standard_normal(20)
    for z, w in zip(zs[:10], zs[10:]):
        z, w = complex(z), complex(w)
        assert abs(chordal(z, w) - chordal(w, z)) < 1e-15
        if z != 0 and w != 0:
            assert abs(chordal(z, w) - chordal(1 / z, 1 / w)) < 1e-10
