"""Smoke tests for the python bindings: the module imports, the main
operations run end to end, and a few cross-checks tie the exposed numbers
together. Heavy numerical validation lives in the C++ suites."""

import numpy as np
import pytest

import hinv


def quick_config():
    cfg = hinv.OptimizerConfig()
    cfg.multistart_count = 2
    cfg.convergence_step = 1e-3
    return cfg


def test_version_is_exposed():
    assert isinstance(hinv.__version__, str)
    assert hinv.__version__.count(".") == 2


def test_simulated_market_shape_and_determinism():
    data = hinv.simulate_student_market([4, 3], 120, seed=7)
    assert data.observations == 120
    assert data.assets == 2
    assert data.labels == ["a1", "a2"]
    assert data.returns.shape == (120, 2)
    again = hinv.simulate_student_market([4, 3], 120, seed=7)
    np.testing.assert_array_equal(data.returns, again.returns)


def test_sample_mean_cov_matches_numpy():
    data = hinv.simulate_student_market([4, 3, 5], 200, seed=11)
    mean, cov = hinv.sample_mean_cov(data)
    np.testing.assert_allclose(mean, data.returns.mean(axis=0), rtol=0, atol=1e-14)
    np.testing.assert_allclose(cov, np.cov(data.returns, rowvar=False), rtol=1e-12)


def test_hellinger_closed_form_agrees_with_oracle():
    data = hinv.simulate_student_market([4, 3], 300, seed=13)
    series = hinv.portfolio_series(data, np.array([0.5, 0.5]))
    density = hinv.bin_density(series, hinv.default_bin_count(300))
    target = hinv.NormalTarget(mu=float(series.mean()), sigma_sq=float(series.var(ddof=1)))
    closed = hinv.hellinger_sq(density, target)
    oracle = hinv.hellinger_sq_quadrature_oracle(density, target, tol=1e-10)
    assert 0.0 <= closed <= 1.0
    assert abs(closed - oracle) <= 1e-6


def test_min_variance_solution_is_feasible():
    data = hinv.simulate_student_market([4, 3, 5], 250, seed=17)
    mean, cov = hinv.sample_mean_cov(data)
    e = float(0.4 * mean.min() + 0.6 * mean.max())
    w, variance = hinv.solve_min_variance(mean, cov, e)
    assert abs(w.sum() - 1.0) <= 1e-9
    assert abs(float(mean @ w) - e) <= 1e-8
    assert w.min() >= -1e-10
    assert variance >= 0.0


def test_projection_returns_feasible_point():
    mean = np.array([0.0, 1.0])
    w = hinv.project_to_constraint_set(np.array([1.0, 0.0]), mean, 0.25)
    np.testing.assert_allclose(w, [0.75, 0.25], atol=1e-9)


def test_frontier_scan_report_roundtrip():
    data = hinv.simulate_student_market([4, 3], 150, seed=19)
    report = hinv.frontier_scan(data, 5, quick_config(), "demo", 1)
    assert report.market_label == "demo"
    assert len(report.frontier) == 5
    assert report.invariant_h2 > 0.0
    assert min(p.hellinger_sq_min for p in report.frontier if p.ok) == report.invariant_h2
    assert report.config.grid_size == 5
    assert report.config.multistart_count == 2

    # serialization is deterministic and parseable
    text = report.to_json()
    assert text == hinv.frontier_scan(data, 5, quick_config(), "demo", 1).to_json()
    import json

    parsed = json.loads(text)
    assert parsed["market"] == "demo"
    assert parsed["invariant_h2"] == report.invariant_h2


def test_perturbation_is_deterministic():
    data = hinv.simulate_student_market([4, 3], 60, seed=23)
    spec = hinv.PerturbationSpec()
    spec.data_fraction = 0.1
    spec.magnitude = 0.2
    spec.seed = 5
    first = hinv.perturb_returns(data, spec, 1)
    again = hinv.perturb_returns(data, spec, 1)
    np.testing.assert_array_equal(first.returns, again.returns)
    assert (first.returns != data.returns).sum() == int(np.ceil(0.1 * data.returns.size))


def test_sensitivity_runs_end_to_end():
    data = hinv.simulate_student_market([4, 3], 100, seed=29)
    spec = hinv.PerturbationSpec()
    spec.replications = 3
    rep = hinv.sensitivity_perturbation(data, spec, 4, quick_config(), 1)
    assert rep.replication_count == 3
    assert len(rep.per_replication_changes) == 3
    assert rep.mean_abs_change >= 0.0

    bins = hinv.sensitivity_binning(data, 10, 4, quick_config(), 1)
    assert bins.replication_count == 2


def test_errors_surface_as_python_exceptions():
    with pytest.raises(OSError):
        hinv.load_prices("/nonexistent/prices.csv")
    with pytest.raises(ValueError):
        hinv.NormalTarget(mu=0.0, sigma_sq=-1.0)
    with pytest.raises(ValueError):
        hinv.simulate_student_market([4, 3], 1, seed=0)
