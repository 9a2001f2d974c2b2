import math

import numpy as np
import pytest

from lejabounds import (GreenBuildError, ValidationError, build_green_model,
                        green_interval_analytic, make_union)

# closed forms for the unit interval
LOG_2_PLUS_SQRT3 = 1.3169578969248166   # value at z = 2
LOG_1_PLUS_SQRT2 = 0.8813735870195429   # value at z = i


def test_interval_closed_form_values(model_unit):
    assert abs(model_unit.value(2.0 + 0j) - LOG_2_PLUS_SQRT3) < 1e-12
    assert abs(model_unit.value(1j) - LOG_1_PLUS_SQRT2) < 1e-12
    assert model_unit.capacity == pytest.approx(0.5, abs=1e-12)


def test_interval_matches_analytic_on_plane(model_unit, rng):
    worst = 0.0
    count = 0
    while count < 200:
        z = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
        if abs(z.imag) < 1e-3 and -1.1 < z.real < 1.1:
            continue
        count += 1
        worst = max(worst, abs(model_unit.value(z)
                               - green_interval_analytic(-1.0, 1.0, z)))
    assert worst < 1e-9


def test_vanishes_on_the_set(model_unit, model_two, K_unit, K_two):
    for model, K in ((model_unit, K_unit), (model_two, K_two)):
        vals = model.value(K.grid(400.0))
        assert np.max(vals) < 1e-10
        assert np.min(vals) >= 0.0


def test_positive_off_the_set(model_two):
    # gap midpoint, above the plane, far left
    for z in (1.5 + 0j, 0.5 + 0.2j, -3.0 + 0j):
        assert model_two.value(z) > 1e-3


def test_far_field_is_log_minus_log_capacity(model_unit, model_two):
    for model in (model_unit, model_two):
        for z in (1e5 + 0j, -2e5 + 3e4j):
            expect = math.log(abs(z - 0.5 * (model.set.lo + model.set.hi))) \
                - math.log(model.capacity)
            assert abs(model.value(z) - expect) < 1e-4


def test_affine_capacity_scaling():
    # capacity of [c - L/2, c + L/2] is L/4 regardless of c
    m = build_green_model(make_union([(3.0, 7.0)]))
    assert m.capacity == pytest.approx(1.0, abs=1e-12)
    m2 = build_green_model(make_union([(0.0, 1.0)]))
    assert m2.capacity == pytest.approx(0.25, abs=1e-12)


def test_symmetric_union_density_closed_form(model_sym):
    # for [-1,-alpha] U [alpha,1] the equilibrium density is
    # |t| / (pi sqrt((t^2 - alpha^2)(1 - t^2)))
    alpha = 0.3
    ts = np.linspace(0.35, 0.95, 40)
    expect = np.abs(ts) / (np.pi * np.sqrt((ts ** 2 - alpha ** 2) * (1 - ts ** 2)))
    got = model_sym.density(ts)
    np.testing.assert_allclose(got, expect, rtol=1e-9)
    got_neg = model_sym.density(-ts)
    np.testing.assert_allclose(got_neg, expect, rtol=1e-9)


def test_density_mass_one(model_two):
    # integrate the density by substitution across each component
    total = 0.0
    for lo, hi in model_two.set.intervals:
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        th = (np.arange(4000) + 0.5) * np.pi / 4000
        t = mid + half * np.cos(th)
        total += np.sum(model_two.density(t) * half * np.sin(th)) * np.pi / 4000
    assert total == pytest.approx(1.0, abs=1e-8)


def test_monotone_in_distance_along_ray(model_unit):
    ys = np.geomspace(1e-3, 10.0, 50)
    vals = np.array([model_unit.value(complex(0.0, y)) for y in ys])
    assert np.all(np.diff(vals) > 0)


def test_neighborhood_max_monotone(model_two):
    deltas = np.geomspace(1e-4, 0.5, 12)
    gs = np.array([model_two.neighborhood_max(float(d)) for d in deltas])
    assert np.all(gs > 0)
    assert np.all(np.diff(gs) > -1e-12)


def test_neighborhood_max_cached(model_unit):
    a = model_unit.neighborhood_max(1e-3)
    b = model_unit.neighborhood_max(1e-3)
    assert a == b


def test_sqrt_scaling_near_set(model_unit):
    # G(delta) ~ c sqrt(delta) for small delta
    d1, d2 = 1e-5, 1e-3
    g1 = model_unit.neighborhood_max(d1)
    g2 = model_unit.neighborhood_max(d2)
    slope = (math.log(g2) - math.log(g1)) / (math.log(d2) - math.log(d1))
    assert abs(slope - 0.5) < 0.05


def test_build_rejects_tiny_order(K_unit):
    with pytest.raises(ValidationError):
        build_green_model(K_unit, quadrature_order=4)


def test_cantor_build_converges():
    from lejabounds import cantor_approx
    m = build_green_model(cantor_approx(3, 1.0 / 3.0))
    assert m.capacity > 0
    vals = m.value(m.set.grid(50.0))
    assert np.max(vals) < 1e-8


def test_analytic_reference_properties():
    assert abs(green_interval_analytic(-1.0, 1.0, 0.3 + 0j)) < 1e-14
    assert green_interval_analytic(0.0, 4.0, 2.0 + 1e8j) == pytest.approx(
        math.log(1e8) - math.log(1.0), rel=1e-6)
