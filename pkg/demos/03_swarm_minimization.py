"""
Particle swarm optimization on benchmark functions
==================================================

Particles move under inertia plus attraction toward their own best
position and the swarm's best position.  The classic sanity check is
the sphere function: its only minimum is 0 at the origin.
"""

import numpy as np

from harvestnn import PsoConfig, optimize

DIMENSION = 47  # same size as the 3-6-2-3 network's parameter vector


def sphere(x):
    return float(np.sum(np.square(x)))


def rastrigin(x):
    return float(10.0 * x.size + np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x)))


# the largest training budget used by the model comparison
config = PsoConfig(swarm_size=300, max_iterations=221, seed=0)
best, cost, history = optimize(config, DIMENSION, sphere)
print(f"sphere, swarm {config.swarm_size}, {config.max_iterations} iterations")
print(f"  best cost: {cost:.3e}")
print(f"  |best position|: {np.abs(best).max():.3e}")

# the best-so-far trace only ever moves down
costs = [c for _, c in history]
print("  monotone trace:", all(b <= a for a, b in zip(costs, costs[1:])))
print(f"  trace: {costs[0]:.2f} -> {costs[10]:.2f} -> {costs[50]:.3f} "
      f"-> {costs[-1]:.1e}")

# same seed, same answer: the optimizer is a pure function of its config
_, cost_again, _ = optimize(config, DIMENSION, sphere)
print("  deterministic:", cost_again == cost)

# rastrigin is multimodal; a modest budget still finds a decent basin
config = PsoConfig(swarm_size=60, max_iterations=150, seed=3)
_, cost, _ = optimize(config, 5, rastrigin)
print(f"rastrigin (5-d, swarm 60): best cost {cost:.4f}")
