import math

import numpy as np
import pytest

from lejabounds import (ValidationError, lebesgue_bound, optimize_bound,
                        quasi_lebesgue_bound, switching_constant)

LAM = 0.24565978


def test_switching_constant_value():
    lam = switching_constant()
    assert lam == pytest.approx(LAM, abs=1e-8)
    # defining equation e^(e^lam) (e^lam - 1) = 1
    assert abs(math.exp(math.exp(lam)) * (math.exp(lam) - 1.0) - 1.0) < 1e-10
    assert lam > 0.2


def test_switching_constant_cached():
    assert switching_constant() is switching_constant() or \
        switching_constant() == switching_constant()


def test_bound_formula_direct(model_unit):
    n, delta = 5, 0.1
    g = model_unit.neighborhood_max(delta)
    expect = 2.0 * n * (model_unit.set.diam / delta * math.exp(n * g)) ** (9.0 / 8.0)
    assert lebesgue_bound(model_unit, n, delta) == pytest.approx(expect, rel=1e-12)


def test_quasi_bound_formula_direct(model_unit):
    n, delta, tau = 5, 0.1, 0.8
    g = model_unit.neighborhood_max(delta)
    lam = switching_constant()
    expo = 9.0 / 8.0 + 2.0 * math.log(1.0 / tau) / lam
    expect = (2.0 / tau ** 2) * n * \
        (model_unit.set.diam / (tau * delta) * math.exp(n * g)) ** expo
    assert quasi_lebesgue_bound(model_unit, n, tau, delta) == pytest.approx(
        expect, rel=1e-12)


def test_quasi_bound_reduces_at_tau_one(model_unit):
    for n in (1, 3, 17):
        for delta in (1e-3, 0.05, 0.7):
            assert quasi_lebesgue_bound(model_unit, n, 1.0, delta) == \
                lebesgue_bound(model_unit, n, delta)


def test_bound_monotone_in_tau(model_unit):
    vals = [quasi_lebesgue_bound(model_unit, 10, tau, 0.05)
            for tau in (1.0, 0.9, 0.7, 0.5)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_any_delta_is_valid(model_unit, leja_unit_100, K_unit):
    # the bound holds for every delta, not only the optimized one
    from lejabounds import InterpolationOperator
    op = InterpolationOperator.from_sequence(leja_unit_100, n=12)
    lam = op.lebesgue_constant(K_unit).lambda_n
    for delta in (1e-4, 1e-3, 1e-2, 0.1, 1.0, 5.0):
        assert lam <= lebesgue_bound(model_unit, 12, delta)


def test_optimize_bound_report(model_unit):
    rep = optimize_bound(model_unit, 10)
    # refinement may only improve on the grid minimum
    assert rep.best_bound <= min(rep.bound_values) + 1e-12
    assert rep.best_delta > 0
    assert len(rep.delta_grid) == len(rep.g_values) == len(rep.bound_values)
    assert rep.n == 10 and rep.tau == 1.0


def test_optimize_bound_improves_on_coarse_grid(model_unit):
    coarse = optimize_bound(model_unit, 20, grid_points=8)
    fine = optimize_bound(model_unit, 20, grid_points=128)
    assert fine.best_bound <= coarse.best_bound * 1.05


def test_optimized_delta_interior_for_moderate_n(model_unit):
    rep = optimize_bound(model_unit, 30)
    assert rep.delta_grid[0] < rep.best_delta < rep.delta_grid[-1]


def test_bound_csv(tmp_path, model_unit):
    rep = optimize_bound(model_unit, 4, grid_points=16)
    p = tmp_path / "sweep.csv"
    rep.write_csv(p)
    lines = p.read_text().splitlines()
    assert lines[0] == "delta,G,bound"
    assert len(lines) == 17


def test_overflow_returns_inf(model_unit):
    # giant n at tiny delta overflows the exponential: must clip to inf
    assert quasi_lebesgue_bound(model_unit, 10 ** 6, 0.5, 1e-4) == math.inf


def test_bad_args(model_unit):
    with pytest.raises(ValidationError):
        lebesgue_bound(model_unit, 0, 0.1)
    with pytest.raises(ValidationError):
        lebesgue_bound(model_unit, 3, -1.0)
    with pytest.raises(ValidationError):
        quasi_lebesgue_bound(model_unit, 3, 1.5, 0.1)
    with pytest.raises(ValidationError):
        quasi_lebesgue_bound(model_unit, 3, 0.0, 0.1)
