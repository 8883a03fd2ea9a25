"""Acceptance checks: one test per advertised guarantee.

Run with -v to get a pass/fail line per criterion.  The expensive ten-seed
comparison sweep is computed once and shared by the tests that need it.
"""

import math
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from harvestnn.dataset import (
    fit_normalization,
    ingest,
    split,
    synthesize,
    write_dataset,
)
from harvestnn.experiment import comparison_preset, emit_reports, run_with_seeds
from harvestnn.metrics import PairedSeries, mae, r_paper, r_pearson, rmse
from harvestnn.network import NetworkSpec, ParameterVector, parameter_count
from harvestnn.pso import PsoConfig, initialize_swarm, optimize, step
from harvestnn.trainers import (
    TrainObjective,
    backprop_gradient,
    load_model,
    mse_cost,
    objective_cost,
    save_model,
    train_pso,
)

SPHERE_DIMENSION = 47  # parameter count of the 3-6-2-3 network


def _sphere(x):
    return float(np.sum(np.square(x)))


@pytest.fixture(scope="module")
def comparison_sweep():
    """The four-model comparison repeated over ten seeds, with wall time."""
    started = time.perf_counter()
    sweep = run_with_seeds(comparison_preset(), range(10))
    return sweep, time.perf_counter() - started


def test_1_gradient_matches_finite_differences():
    started = time.perf_counter()
    spec = NetworkSpec((2, 3, 2))
    rng = np.random.default_rng(2024)
    objective = TrainObjective(spec, rng.uniform(-1.0, 1.0, size=(5, 2)),
                               rng.uniform(0.1, 0.9, size=(5, 2)))
    h = 1e-5
    worst = 0.0
    for draw in range(10):
        values = np.random.default_rng(draw).uniform(-1.0, 1.0,
                                                     parameter_count(spec.layer_sizes))
        analytic = backprop_gradient(objective, ParameterVector(values, spec))
        numeric = np.empty_like(values)
        for j in range(values.size):
            bumped = values.copy()
            bumped[j] = values[j] + h
            up = mse_cost(objective, ParameterVector(bumped, spec))
            bumped[j] = values[j] - h
            down = mse_cost(objective, ParameterVector(bumped, spec))
            numeric[j] = (up - down) / (2.0 * h)
        relative = np.abs(analytic - numeric) / np.maximum(np.abs(numeric), 1e-8)
        worst = max(worst, float(relative.max()))
    assert worst < 1e-6
    assert time.perf_counter() - started < 1.0


def test_2_metrics_match_direct_summation():
    def close(mine, brute):
        return abs(mine - brute) <= 1e-12 * max(abs(mine), abs(brute), 1.0)

    started = time.perf_counter()
    rng = np.random.default_rng(99)
    for _ in range(100):
        n = int(rng.integers(1, 51))
        actual = list(rng.normal(5.0, 3.0, size=n))
        predicted = list(rng.normal(5.0, 3.0, size=n))
        pairs = PairedSeries(actual, predicted)

        sq = sum((a - p) ** 2 for a, p in zip(actual, predicted))
        assert close(rmse(pairs), math.sqrt(sq / n))
        assert close(mae(pairs),
                     sum(abs(a - p) for a, p in zip(actual, predicted)) / n)
        denom = sum(a * a for a in actual)
        assert close(r_paper(pairs), math.sqrt(max(1.0 - sq / denom, 0.0)))
        if n >= 2:
            mean_a = sum(actual) / n
            mean_p = sum(predicted) / n
            cov = sum((a - mean_a) * (p - mean_p)
                      for a, p in zip(actual, predicted))
            var_a = sum((a - mean_a) ** 2 for a in actual)
            var_p = sum((p - mean_p) ** 2 for p in predicted)
            assert close(r_pearson(pairs), cov / math.sqrt(var_a * var_p))
    assert time.perf_counter() - started < 1.0


def test_3_sphere_convergence_at_largest_swarm_budget():
    started = time.perf_counter()
    wins = 0
    for seed in range(5):
        config = PsoConfig(swarm_size=300, max_iterations=221, seed=seed)
        _, best_cost, _ = optimize(config, SPHERE_DIMENSION, _sphere)
        wins += best_cost < 1e-2
    assert wins >= 4, f"converged in only {wins} of 5 seeds"
    assert time.perf_counter() - started < 10.0


def test_4_swarm_invariants_on_sphere_and_network_objective():
    def check_invariants(cost, dimension, config):
        calls = 0

        def counting(x):
            nonlocal calls
            calls += 1
            return cost(x)

        state = initialize_swarm(config, dimension, counting)
        for particle in state.particles:
            assert np.all(np.abs(particle.velocity) <= config.velocity_clamp)
        for _ in range(config.max_iterations):
            state = step(state, config, counting)
            for particle in state.particles:
                assert np.all(np.abs(particle.velocity) <= config.velocity_clamp)
        assert calls == config.swarm_size * (config.max_iterations + 1)
        history = [best for _, best in state.cost_history]
        assert len(history) == config.max_iterations + 1
        assert all(b <= a for a, b in zip(history, history[1:]))
        assert history[-1] == state.best_cost

    check_invariants(_sphere, 8, PsoConfig(swarm_size=12, max_iterations=25, seed=3))

    rng = np.random.default_rng(7)
    spec = NetworkSpec((3, 6, 2, 3))
    objective = TrainObjective(spec, rng.uniform(0.0, 1.0, size=(12, 3)),
                               rng.uniform(0.1, 0.9, size=(12, 3)))
    check_invariants(lambda v: objective_cost(objective, ParameterVector(v, spec)),
                     parameter_count(spec.layer_sizes),
                     PsoConfig(swarm_size=10, max_iterations=15, seed=4))


def test_5_swarm_training_beats_gradient_baseline_on_median(comparison_sweep):
    sweep, elapsed = comparison_sweep
    baseline = sweep.median_test_mean_rmse["ANN"]
    swarm = sweep.median_test_mean_rmse["ANN-PSO (300, 221)"]
    assert swarm <= baseline, (
        f"median test mean-RMSE: swarm {swarm} vs baseline {baseline}")
    assert elapsed < 300.0


def test_6_metrics_tables_have_comparison_shape(comparison_sweep, tmp_path):
    sweep, _ = comparison_sweep
    emit_reports(sweep.results[0], tmp_path)
    for name in ("metrics_training.tsv", "metrics_testing.tsv"):
        with open(tmp_path / name) as handle:
            header = handle.readline().rstrip("\n").split("\t")
            rows = handle.read().splitlines()
        assert len(rows) == 4, name
        for output in ("BS", "PL", "MOG"):
            assert f"{output}_rmse" in header
            assert f"{output}_r" in header
        labels = [row.split("\t")[1] for row in rows]
        assert labels == ["ANN", "ANN-PSO (100, 186)", "ANN-PSO (200, 180)",
                          "ANN-PSO (300, 221)"]


def test_7_identical_output_files_across_executions(tmp_path):
    outputs = []
    for attempt in ("first", "second"):
        out_dir = tmp_path / attempt
        command = [sys.executable, "-m", "harvestnn", "run", "--paper-preset",
                   "--seed", "42", "--out-dir", str(out_dir), "--quiet"]
        finished = subprocess.run(command, capture_output=True, text=True)
        assert finished.returncode == 0, finished.stderr
        outputs.append(out_dir)

    first, second = outputs
    names = sorted(os.listdir(first))
    assert names == sorted(os.listdir(second))
    assert len(names) > 20
    for name in names:
        assert (first / name).read_bytes() == (second / name).read_bytes(), name


def test_8_file_and_normalization_round_trips(tmp_path):
    data = synthesize(seed=3)
    dataset_path = tmp_path / "dataset.tsv"
    write_dataset(data, dataset_path)
    again = ingest(dataset_path)
    np.testing.assert_array_equal(again.values, data.values)

    norm = fit_normalization(data)
    mapped = norm.apply(data.values)
    np.testing.assert_allclose(norm.invert(mapped), data.values, rtol=1e-12)

    spec = NetworkSpec((3, 6, 2, 3))
    objective = TrainObjective(spec, norm.normalize_inputs(data.inputs),
                               norm.normalize_targets(data.targets))
    model = train_pso(objective, PsoConfig(swarm_size=8, max_iterations=6, seed=1))
    model_path = tmp_path / "model.txt"
    save_model(model, model_path, norm)
    loaded, loaded_norm = load_model(model_path)
    np.testing.assert_array_equal(loaded.params.values, model.params.values)
    assert loaded.spec == model.spec
    assert loaded.training_curve == model.training_curve
    assert loaded.config_fingerprint == model.config_fingerprint
    np.testing.assert_array_equal(loaded_norm.col_min, norm.col_min)
    np.testing.assert_array_equal(loaded_norm.col_max, norm.col_max)
    assert loaded_norm.interval == norm.interval


def test_9_split_sizes_disjoint_and_exhaustive():
    data = synthesize(seed=0)
    for seed in range(5):
        parts = split(data, 0.7, seed)
        assert len(parts.train_indices) == 57
        assert len(parts.test_indices) == 24
        combined = sorted(list(parts.train_indices) + list(parts.test_indices))
        assert combined == list(range(81))
