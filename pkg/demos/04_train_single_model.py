"""
Training one network two ways: gradient descent vs. the swarm
=============================================================

Both trainers minimize the same thing, the mean over outputs of the
per-output RMSE on normalized training data.  Gradient descent follows
the backpropagated gradient; the swarm treats the cost as a black box
over the 47-dimensional parameter vector.
"""

import numpy as np

from harvestnn import (
    BackpropConfig,
    NetworkSpec,
    PsoConfig,
    TrainObjective,
    evaluate,
    fit_normalization,
    split,
    synthesize,
    train_backprop,
    train_pso,
)

# shared data: synthetic harvester table, 70/30 split, [0.1, 0.9] scaling
data = synthesize(seed=1)
parts = split(data, 0.7, seed=1)
norm = fit_normalization(data, parts.train_indices)

spec = NetworkSpec((3, 6, 2, 3))
objective = TrainObjective(
    spec,
    norm.normalize_inputs(data.inputs[parts.train_indices]),
    norm.normalize_targets(data.targets[parts.train_indices]),
)

# the gradient-descent baseline
baseline = train_backprop(objective, BackpropConfig(epochs=5000, seed=2))
print(f"{baseline.method_tag}: cost {baseline.training_curve[0][1]:.4f} "
      f"-> {baseline.training_curve[-1][1]:.4f} "
      f"over {len(baseline.training_curve) - 1} epochs")

# the swarm, at the smallest budget from the model comparison
swarm = train_pso(objective, PsoConfig(swarm_size=100, max_iterations=186, seed=2))
print(f"{swarm.method_tag}: cost {swarm.training_curve[0][1]:.4f} "
      f"-> {swarm.training_curve[-1][1]:.4f} "
      f"over {len(swarm.training_curve) - 1} iterations")

# scoring happens in original units on the held-out rows
test_x = data.inputs[parts.test_indices]
test_y = data.targets[parts.test_indices]
for model in (baseline, swarm):
    report = evaluate(model, test_x, test_y, norm, "test")
    print(f"\n{model.method_tag} test metrics:")
    for name, scores in report.per_output.items():
        print(f"  {name:>3}: rmse {scores.rmse:8.4f}   r {scores.r_paper:.4f}"
              f"   mae {scores.mae:8.4f}")
    print(f"  mean rmse: {report.mean_rmse:.4f}")
