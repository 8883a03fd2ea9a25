"""Particle swarm optimization over real vectors.

Each particle carries a position and velocity; every iteration the velocity
is refreshed from three pulls (inertia, attraction to the particle's own best
point, attraction to the swarm's best point) and the position moves by the
new velocity.  The swarm runs for a fixed iteration budget.

Randomness is drawn from a counter-based stream: stage k of a run uses
``numpy.random.default_rng((seed, k))`` (k = 0 for initialization, k = t for
the step into iteration t), so a run is fully determined by its config and
any state can be stepped reproducibly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class PsoConfig:
    swarm_size: int
    max_iterations: int
    inertia_weight: float = 0.729
    cognitive_accel: float = 1.49445
    social_accel: float = 1.49445
    position_init_range: tuple[float, float] = (-1.0, 1.0)
    velocity_clamp: float = 0.5
    seed: int = 0
    # optional early stop on reaching a cost threshold; None = run full budget
    early_stop_cost: float | None = None

    def __post_init__(self):
        if self.swarm_size < 2:
            raise ValueError(f"swarm_size must be >= 2, got {self.swarm_size}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        lo, hi = self.position_init_range
        if not lo < hi:
            raise ValueError(f"position_init_range must satisfy lo < hi, got ({lo}, {hi})")
        if not self.velocity_clamp > 0:
            raise ValueError(f"velocity_clamp must be positive, got {self.velocity_clamp}")
        if self.cognitive_accel < 0 or self.social_accel < 0:
            raise ValueError("acceleration coefficients must be non-negative")


@dataclass
class Particle:
    position: np.ndarray
    velocity: np.ndarray
    best_position: np.ndarray
    best_cost: float


@dataclass
class SwarmState:
    particles: list[Particle]
    best_position: np.ndarray
    best_cost: float
    iteration: int
    cost_history: list[tuple[int, float]] = field(default_factory=list)
    nonfinite_evals: int = 0


def _velocity_kernel(velocity, position, best_position, global_best, r1, r2, config):
    new = (
        config.inertia_weight * velocity
        + config.cognitive_accel * r1 * (best_position - position)
        + config.social_accel * r2 * (global_best - position)
    )
    return np.clip(new, -config.velocity_clamp, config.velocity_clamp)


def velocity_update(particle: Particle, global_best, config: PsoConfig, r1, r2) -> np.ndarray:
    """New velocity of one particle, clamped component-wise to +-velocity_clamp.

    r1 and r2 are random vectors with components in [0, 1], one entry per
    dimension.
    """
    global_best = np.asarray(global_best, dtype=np.float64)
    r1 = np.asarray(r1, dtype=np.float64)
    r2 = np.asarray(r2, dtype=np.float64)
    dim = particle.position.shape
    for name, vec in (("global_best", global_best), ("r1", r1), ("r2", r2)):
        if vec.shape != dim:
            raise ValueError(f"{name} has shape {vec.shape}, expected {dim}")
    return _velocity_kernel(
        particle.velocity, particle.position, particle.best_position,
        global_best, r1, r2, config,
    )


def position_update(position, velocity_next) -> np.ndarray:
    """Component-wise move: new position = position + new velocity."""
    position = np.asarray(position, dtype=np.float64)
    velocity_next = np.asarray(velocity_next, dtype=np.float64)
    if position.shape != velocity_next.shape:
        raise ValueError(
            f"position has shape {position.shape}, velocity has shape {velocity_next.shape}"
        )
    return position + velocity_next


def initialize_swarm(config: PsoConfig, dimension: int, cost) -> SwarmState:
    """Scatter the swarm uniformly over the init range and evaluate it.

    Positions are i.i.d. uniform in position_init_range per component,
    velocities i.i.d. uniform in [-velocity_clamp, +velocity_clamp].  Every
    particle's best point starts at its position.  A non-finite cost at any
    particle rejects the whole initialization.
    """
    if dimension < 1:
        raise ValueError(f"dimension must be >= 1, got {dimension}")
    rng = np.random.default_rng((config.seed, 0))
    lo, hi = config.position_init_range
    positions = rng.uniform(lo, hi, size=(config.swarm_size, dimension))
    velocities = rng.uniform(
        -config.velocity_clamp, config.velocity_clamp, size=(config.swarm_size, dimension)
    )
    particles = []
    for i in range(config.swarm_size):
        c = float(cost(positions[i]))
        if not math.isfinite(c):
            raise ValueError(f"non-finite cost {c!r} at particle {i} during initialization")
        particles.append(Particle(positions[i], velocities[i], positions[i].copy(), c))
    best = min(range(config.swarm_size), key=lambda i: particles[i].best_cost)
    best_cost = particles[best].best_cost
    return SwarmState(
        particles=particles,
        best_position=particles[best].best_position.copy(),
        best_cost=best_cost,
        iteration=0,
        cost_history=[(0, best_cost)],
    )


def step(state: SwarmState, config: PsoConfig, cost) -> SwarmState:
    """One full iteration: move every particle, evaluate, refresh best points.

    All random draws happen before any cost evaluation.  A non-finite cost is
    treated as +inf (the particle keeps its new position, best points stay)
    and counted in nonfinite_evals.  Personal and global bests only change on
    strict improvement, so ties keep the incumbent.
    """
    t = state.iteration + 1
    swarm = len(state.particles)
    positions = np.stack([p.position for p in state.particles])
    velocities = np.stack([p.velocity for p in state.particles])
    best_positions = np.stack([p.best_position for p in state.particles])
    best_costs = [p.best_cost for p in state.particles]

    rng = np.random.default_rng((config.seed, t))
    dim = positions.shape[1]
    r1 = rng.random((swarm, dim))
    r2 = rng.random((swarm, dim))

    new_velocities = _velocity_kernel(
        velocities, positions, best_positions, state.best_position, r1, r2, config
    )
    new_positions = positions + new_velocities

    nonfinite = state.nonfinite_evals
    particles = []
    for i in range(swarm):
        c = float(cost(new_positions[i]))
        if not math.isfinite(c):
            c = math.inf
            nonfinite += 1
        if c < best_costs[i]:
            best_pos, best_cost = new_positions[i].copy(), c
        else:
            best_pos, best_cost = best_positions[i], best_costs[i]
        particles.append(Particle(new_positions[i], new_velocities[i], best_pos, best_cost))

    best = min(range(swarm), key=lambda i: particles[i].best_cost)
    if particles[best].best_cost < state.best_cost:
        global_pos = particles[best].best_position.copy()
        global_cost = particles[best].best_cost
    else:
        global_pos, global_cost = state.best_position, state.best_cost

    return SwarmState(
        particles=particles,
        best_position=global_pos,
        best_cost=global_cost,
        iteration=t,
        cost_history=state.cost_history + [(t, global_cost)],
        nonfinite_evals=nonfinite,
    )


def optimize(config: PsoConfig, dimension: int, cost, trace=None):
    """Run the full iteration budget and return the swarm's best point.

    Returns (best_position, best_cost, history) where history lists
    (iteration, global best cost) for the initial swarm and every step.  When
    `trace` is a writable text stream, the same records are written to it as
    tab-separated lines.  best_cost re-evaluates: cost(best_position) ==
    best_cost.
    """
    state = initialize_swarm(config, dimension, cost)
    if trace is not None:
        trace.write("iteration\tbest_cost\n")
        trace.write(f"0\t{state.best_cost!r}\n")
    for _ in range(config.max_iterations):
        state = step(state, config, cost)
        if trace is not None:
            trace.write(f"{state.iteration}\t{state.best_cost!r}\n")
        if config.early_stop_cost is not None and state.best_cost <= config.early_stop_cost:
            break
    return state.best_position.copy(), state.best_cost, list(state.cost_history)
