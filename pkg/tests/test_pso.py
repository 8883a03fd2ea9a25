"""Swarm optimizer: update algebra, invariants, determinism, budget accounting."""

import io
import math

import numpy as np
import pytest

from harvestnn.pso import (
    Particle,
    PsoConfig,
    initialize_swarm,
    optimize,
    position_update,
    step,
    velocity_update,
)


def sphere(x):
    return float(np.dot(x, x))


def _config(**overrides):
    base = dict(swarm_size=20, max_iterations=30, seed=0)
    base.update(overrides)
    return PsoConfig(**base)


class TestPsoConfig:
    def test_defaults(self):
        config = _config()
        assert config.inertia_weight == 0.729
        assert config.cognitive_accel == 1.49445
        assert config.social_accel == 1.49445
        assert config.position_init_range == (-1.0, 1.0)
        assert config.velocity_clamp == 0.5
        assert config.early_stop_cost is None

    def test_validation(self):
        with pytest.raises(ValueError, match="swarm_size"):
            _config(swarm_size=1)
        with pytest.raises(ValueError, match="max_iterations"):
            _config(max_iterations=0)
        with pytest.raises(ValueError, match="lo < hi"):
            _config(position_init_range=(1.0, 1.0))
        with pytest.raises(ValueError, match="velocity_clamp"):
            _config(velocity_clamp=0.0)
        with pytest.raises(ValueError, match="acceleration"):
            _config(cognitive_accel=-0.1)


class TestVelocityUpdate:
    def test_direct_evaluation(self):
        # 0.7*1 + 2*0.5*(2-0) + 2*0.5*(4-0) = 6.7
        config = _config(inertia_weight=0.7, cognitive_accel=2.0, social_accel=2.0,
                         velocity_clamp=100.0)
        particle = Particle(position=np.array([0.0]), velocity=np.array([1.0]),
                            best_position=np.array([2.0]), best_cost=0.0)
        new = velocity_update(particle, [4.0], config, [0.5], [0.5])
        np.testing.assert_allclose(new, [6.7], rtol=1e-15)

    def test_pure_inertia_when_converged(self):
        # xp == pbest == gbest: both attraction terms vanish
        config = _config(inertia_weight=1.0, velocity_clamp=100.0)
        x = np.array([0.3, -0.7])
        particle = Particle(position=x, velocity=np.array([0.2, -0.4]),
                            best_position=x.copy(), best_cost=1.0)
        new = velocity_update(particle, x.copy(), config, [0.9, 0.1], [0.2, 0.8])
        np.testing.assert_array_equal(new, particle.velocity)

    def test_clamped(self):
        rng = np.random.default_rng(7)
        config = _config(velocity_clamp=0.1)
        for _ in range(50):
            particle = Particle(position=rng.uniform(-5, 5, 4),
                                velocity=rng.uniform(-5, 5, 4),
                                best_position=rng.uniform(-5, 5, 4), best_cost=0.0)
            new = velocity_update(particle, rng.uniform(-5, 5, 4), config,
                                  rng.random(4), rng.random(4))
            assert np.all(np.abs(new) <= 0.1)

    def test_dimension_mismatch(self):
        particle = Particle(position=np.zeros(3), velocity=np.zeros(3),
                            best_position=np.zeros(3), best_cost=0.0)
        with pytest.raises(ValueError, match="global_best"):
            velocity_update(particle, np.zeros(2), _config(), np.zeros(3), np.zeros(3))
        with pytest.raises(ValueError, match="r1"):
            velocity_update(particle, np.zeros(3), _config(), np.zeros(2), np.zeros(3))


class TestPositionUpdate:
    def test_zero_motion(self):
        np.testing.assert_array_equal(position_update([0.0, 0.0], [0.0, 0.0]), [0.0, 0.0])

    def test_componentwise_sum(self):
        np.testing.assert_array_equal(position_update([1.0, 2.0], [0.5, -0.5]), [1.5, 1.5])

    def test_additive_inverse(self):
        rng = np.random.default_rng(8)
        x = rng.uniform(-3, 3, 6)
        u = rng.uniform(-3, 3, 6)
        np.testing.assert_allclose(position_update(position_update(x, -u), u), x,
                                   rtol=1e-15, atol=1e-15)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="shape"):
            position_update([1.0, 2.0], [1.0])


class TestInitializeSwarm:
    def test_positions_in_range_and_bests_consistent(self):
        config = _config(swarm_size=300, position_init_range=(-1.0, 1.0))
        state = initialize_swarm(config, 47, sphere)
        assert len(state.particles) == 300
        assert state.iteration == 0
        costs = []
        for particle in state.particles:
            assert particle.position.shape == (47,)
            assert np.all(particle.position >= -1.0) and np.all(particle.position <= 1.0)
            assert np.all(np.abs(particle.velocity) <= config.velocity_clamp)
            np.testing.assert_array_equal(particle.best_position, particle.position)
            assert particle.best_cost == sphere(particle.position)
            costs.append(particle.best_cost)
        assert state.best_cost == min(costs)
        assert state.cost_history == [(0, state.best_cost)]

    def test_deterministic(self):
        config = _config(seed=11)
        a = initialize_swarm(config, 5, sphere)
        b = initialize_swarm(config, 5, sphere)
        assert a.best_cost == b.best_cost
        for pa, pb in zip(a.particles, b.particles):
            np.testing.assert_array_equal(pa.position, pb.position)
            np.testing.assert_array_equal(pa.velocity, pb.velocity)

    def test_two_particles_definitional(self):
        config = _config(swarm_size=2, seed=3)
        state = initialize_swarm(config, 1, sphere)
        by_cost = sorted(state.particles, key=lambda p: p.best_cost)
        assert state.best_cost == by_cost[0].best_cost
        np.testing.assert_array_equal(state.best_position, by_cost[0].best_position)

    def test_bad_dimension(self):
        with pytest.raises(ValueError, match="dimension"):
            initialize_swarm(_config(), 0, sphere)

    def test_nonfinite_cost_names_particle(self):
        with pytest.raises(ValueError, match="particle 0"):
            initialize_swarm(_config(), 2, lambda x: math.nan)


class TestStep:
    def test_constant_cost_keeps_best(self):
        config = _config(swarm_size=5, seed=2)
        state = initialize_swarm(config, 3, lambda x: 1.0)
        for _ in range(10):
            state = step(state, config, lambda x: 1.0)
        assert state.best_cost == 1.0
        assert state.iteration == 10

    def test_deterministic_successor(self):
        config = _config(seed=4)
        state = initialize_swarm(config, 4, sphere)
        a = step(state, config, sphere)
        b = step(state, config, sphere)
        assert a.best_cost == b.best_cost
        for pa, pb in zip(a.particles, b.particles):
            np.testing.assert_array_equal(pa.position, pb.position)
            np.testing.assert_array_equal(pa.velocity, pb.velocity)

    def test_improves_sphere_over_seeds(self):
        for seed in range(5):
            config = _config(swarm_size=30, max_iterations=100, seed=seed)
            state = initialize_swarm(config, 5, sphere)
            initial = state.best_cost
            for _ in range(100):
                state = step(state, config, sphere)
            assert state.best_cost < initial

    def test_invariants_along_trajectory(self):
        config = _config(swarm_size=15, seed=9)
        state = initialize_swarm(config, 6, sphere)
        for _ in range(40):
            previous = state.best_cost
            state = step(state, config, sphere)
            assert state.best_cost <= previous
            assert state.best_cost == min(p.best_cost for p in state.particles)
            for particle in state.particles:
                assert np.all(np.abs(particle.velocity) <= config.velocity_clamp)
                # the current position was just evaluated, so pbest can't exceed it
                assert particle.best_cost <= sphere(particle.position)
        history_costs = [cost for _, cost in state.cost_history]
        assert all(a >= b for a, b in zip(history_costs, history_costs[1:]))

    def test_nonfinite_cost_counted_not_fatal(self):
        def patchy(x):
            return math.nan if x[0] > 0 else sphere(x)

        config = _config(swarm_size=10, seed=1)
        state = initialize_swarm(config, 2, sphere)
        state = step(state, config, patchy)
        assert state.nonfinite_evals > 0
        assert math.isfinite(state.best_cost)


class TestOptimize:
    def test_history_length_and_monotone(self):
        config = _config(swarm_size=10, max_iterations=25, seed=5)
        _, best_cost, history = optimize(config, 3, sphere)
        assert len(history) == 26
        assert history[0][0] == 0 and history[-1][0] == 25
        costs = [cost for _, cost in history]
        assert all(a >= b for a, b in zip(costs, costs[1:]))
        assert best_cost == costs[-1]

    def test_single_iteration_history(self):
        config = _config(swarm_size=5, max_iterations=1, seed=6)
        _, _, history = optimize(config, 2, sphere)
        assert len(history) == 2

    def test_best_cost_reevaluates(self):
        config = _config(swarm_size=20, max_iterations=40, seed=7)
        best_position, best_cost, _ = optimize(config, 4, sphere)
        assert sphere(best_position) == best_cost

    def test_budget_exactness(self):
        calls = {"n": 0}

        def counting(x):
            calls["n"] += 1
            return sphere(x)

        config = _config(swarm_size=13, max_iterations=17, seed=8)
        optimize(config, 3, counting)
        assert calls["n"] == 13 * (17 + 1)

    def test_shifted_sphere_converges(self):
        config = _config(swarm_size=50, max_iterations=200, seed=0)
        _, best_cost, _ = optimize(config, 3, lambda x: float(np.sum((x - 1.0) ** 2)))
        assert best_cost < 1e-4

    def test_deterministic(self):
        config = _config(seed=10)
        a = optimize(config, 4, sphere)
        b = optimize(config, 4, sphere)
        np.testing.assert_array_equal(a[0], b[0])
        assert a[1] == b[1]
        assert a[2] == b[2]

    def test_early_stop(self):
        config = _config(swarm_size=30, max_iterations=500, seed=3,
                         early_stop_cost=1e-3)
        _, best_cost, history = optimize(config, 2, sphere)
        assert best_cost <= 1e-3
        assert len(history) < 501

    def test_trace_stream_matches_history(self):
        stream = io.StringIO()
        config = _config(swarm_size=8, max_iterations=12, seed=12)
        _, _, history = optimize(config, 2, sphere, trace=stream)
        lines = stream.getvalue().splitlines()
        assert lines[0] == "iteration\tbest_cost"
        assert len(lines) == len(history) + 1
        for line, (iteration, cost) in zip(lines[1:], history):
            cells = line.split("\t")
            assert int(cells[0]) == iteration
            assert float(cells[1]) == cost
