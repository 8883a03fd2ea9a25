"""Network training: swarm search over weights, and a gradient-descent baseline.

Both trainers minimize error on a fixed training set whose targets live in
(0, 1) (the network's output range).  The swarm trainer treats the flat
weight+bias vector as the search space and needs no gradients; the baseline
runs full-batch gradient descent on a mean-squared-error surrogate whose
minimizers coincide with the reported RMSE objective.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from .dataset import COLUMNS, NormalizationSpec
from .network import (
    NetworkSpec,
    ParameterVector,
    parameter_count,
    predict_batch,
    sigmoid,
    unflatten_parameters,
)
from .pso import PsoConfig, optimize

METHOD_ANN = "ANN"
METHOD_ANN_PSO = "ANN-PSO"

MODEL_FORMAT = "harvestnn-model 1"


class TrainingDivergedError(RuntimeError):
    """Training loss became non-finite; retry with a smaller learning rate."""


@dataclass
class TrainObjective:
    """Training inputs/targets bound to an architecture.

    The cost of a parameter vector is the mean over output variables of the
    per-output RMSE between targets and network predictions.
    """

    spec: NetworkSpec
    inputs: np.ndarray   # (n, input_size), normalized
    targets: np.ndarray  # (n, output_size), every component in (0, 1)
    loss: str = "mean_rmse"

    def __post_init__(self):
        inputs = np.asarray(self.inputs, dtype=np.float64)
        targets = np.asarray(self.targets, dtype=np.float64)
        if inputs.ndim != 2 or targets.ndim != 2:
            raise ValueError("inputs and targets must be 2-D arrays (rows = samples)")
        if inputs.shape[0] != targets.shape[0]:
            raise ValueError(
                f"{inputs.shape[0]} input rows vs {targets.shape[0]} target rows"
            )
        if inputs.shape[0] == 0:
            raise ValueError("training set must be non-empty")
        if inputs.shape[1] != self.spec.input_size:
            raise ValueError(
                f"inputs have width {inputs.shape[1]}, spec expects {self.spec.input_size}"
            )
        if targets.shape[1] != self.spec.output_size:
            raise ValueError(
                f"targets have width {targets.shape[1]}, spec expects {self.spec.output_size}"
            )
        if not np.all(np.isfinite(inputs)):
            raise ValueError("inputs must be finite")
        if not (np.all(targets > 0.0) and np.all(targets < 1.0)):
            raise ValueError("targets must lie strictly inside (0, 1); normalize them first")
        if self.loss != "mean_rmse":
            raise ValueError(f"unsupported loss {self.loss!r}")
        self.inputs = inputs
        self.targets = targets


@dataclass
class BackpropConfig:
    learning_rate: float = 0.5
    epochs: int = 5000
    seed: int = 0
    init_scale: float = 0.5  # weights start uniform in [-init_scale, +init_scale]

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise ValueError(f"learning_rate must be positive, got {self.learning_rate}")
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if not self.init_scale > 0:
            raise ValueError(f"init_scale must be positive, got {self.init_scale}")


@dataclass
class TrainedModel:
    spec: NetworkSpec
    params: ParameterVector
    training_curve: list[tuple[int, float]]  # (epoch or iteration, training cost)
    method_tag: str  # METHOD_ANN | METHOD_ANN_PSO
    config_fingerprint: str

    def __post_init__(self):
        if self.method_tag not in (METHOD_ANN, METHOD_ANN_PSO):
            raise ValueError(f"unknown method tag {self.method_tag!r}")
        if not self.training_curve:
            raise ValueError("training curve must be non-empty")


def objective_cost(objective: TrainObjective, params: ParameterVector) -> float:
    """Mean over output variables of per-output RMSE; in [0, 1) for (0,1) targets."""
    predicted = predict_batch(objective.spec, params, objective.inputs)
    err = predicted - objective.targets
    return float(np.mean(np.sqrt(np.mean(err * err, axis=0))))


def mse_cost(objective: TrainObjective, params: ParameterVector) -> float:
    """Mean squared error over all target entries (the gradient-descent surrogate)."""
    predicted = predict_batch(objective.spec, params, objective.inputs)
    err = predicted - objective.targets
    return float(np.mean(err * err))


def backprop_gradient(objective: TrainObjective, params: ParameterVector) -> np.ndarray:
    """Analytic gradient of mse_cost with respect to the flat parameter vector.

    Reverse accumulation through the layers, using the logistic derivative
    y * (1 - y); the result is laid out in the canonical parameter order.
    """
    layers = unflatten_parameters(params)
    activations = [objective.inputs]
    for w, b in layers:
        activations.append(sigmoid(activations[-1] @ w.T + b))

    # d(mse)/d(pre-activation) of the output layer
    out = activations[-1]
    delta = (2.0 / objective.targets.size) * (out - objective.targets) * out * (1.0 - out)

    grads: list[tuple[np.ndarray, np.ndarray]] = [None] * len(layers)
    for k in reversed(range(len(layers))):
        w, _ = layers[k]
        grads[k] = (delta.T @ activations[k], delta.sum(axis=0))
        if k > 0:
            a = activations[k]
            delta = (delta @ w) * a * (1.0 - a)

    return np.concatenate([np.concatenate([gw.ravel(), gb]) for gw, gb in grads])


def _fingerprint(fields: dict) -> str:
    text = "|".join(f"{key}={fields[key]!r}" for key in sorted(fields))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def train_backprop(objective: TrainObjective, config: BackpropConfig) -> TrainedModel:
    """Full-batch gradient descent on the MSE surrogate.

    The training curve records the reported objective (mean-RMSE) at the
    initial point and after every epoch.  Aborts with
    TrainingDivergedError if the loss ever goes non-finite.
    """
    rng = np.random.default_rng(config.seed)
    values = rng.uniform(-config.init_scale, config.init_scale,
                         parameter_count(objective.spec))
    params = ParameterVector(values, objective.spec)
    curve = [(0, objective_cost(objective, params))]
    for epoch in range(1, config.epochs + 1):
        gradient = backprop_gradient(objective, params)
        values = values - config.learning_rate * gradient
        params = ParameterVector(values, objective.spec)
        cost = objective_cost(objective, params)
        if not math.isfinite(cost):
            raise TrainingDivergedError(
                f"training loss became non-finite at epoch {epoch}; "
                f"retry with a smaller learning_rate"
            )
        curve.append((epoch, cost))
    fingerprint = _fingerprint({
        "method": METHOD_ANN,
        "layers": objective.spec.layer_sizes,
        "learning_rate": config.learning_rate,
        "epochs": config.epochs,
        "init_scale": config.init_scale,
        "seed": config.seed,
    })
    return TrainedModel(objective.spec, params, curve, METHOD_ANN, fingerprint)


def train_pso(objective: TrainObjective, pso_config: PsoConfig, trace=None) -> TrainedModel:
    """Swarm search over the flat weight+bias vector, minimizing the mean-RMSE objective.

    The training curve is the swarm's global-best cost history (initial
    swarm plus one entry per iteration).
    """
    spec = objective.spec

    def cost(values):
        return objective_cost(objective, ParameterVector(values, spec))

    best, _, history = optimize(pso_config, parameter_count(spec), cost, trace=trace)
    fingerprint = _fingerprint({
        "method": METHOD_ANN_PSO,
        "layers": spec.layer_sizes,
        "swarm_size": pso_config.swarm_size,
        "max_iterations": pso_config.max_iterations,
        "inertia_weight": pso_config.inertia_weight,
        "cognitive_accel": pso_config.cognitive_accel,
        "social_accel": pso_config.social_accel,
        "position_init_range": pso_config.position_init_range,
        "velocity_clamp": pso_config.velocity_clamp,
        "early_stop_cost": pso_config.early_stop_cost,
        "seed": pso_config.seed,
    })
    return TrainedModel(spec, ParameterVector(best, spec), history, METHOD_ANN_PSO, fingerprint)


def save_model(model: TrainedModel, path, normalization: NormalizationSpec | None = None):
    """Write a model as self-describing text; round-trips exactly via load_model.

    Floats are written with repr, which Python parses back bit-exactly.  An
    optional normalization block lets a saved model be evaluated against raw
    data in original units.
    """
    lines = [
        MODEL_FORMAT,
        f"method\t{model.method_tag}",
        "layers\t" + ",".join(str(n) for n in model.spec.layer_sizes),
        f"activation\t{model.spec.activation}",
        f"fingerprint\t{model.config_fingerprint}",
    ]
    if normalization is not None:
        lo, hi = normalization.interval
        lines.append("normalization_interval\t" + f"{lo!r},{hi!r}")
        lines.append("normalization_min\t" + ",".join(repr(float(v))
                                                      for v in normalization.col_min))
        lines.append("normalization_max\t" + ",".join(repr(float(v))
                                                      for v in normalization.col_max))
    lines.append(f"params\t{len(model.params)}")
    lines.extend(repr(float(v)) for v in model.params.values)
    lines.append(f"curve\t{len(model.training_curve)}")
    lines.extend(f"{step}\t{cost!r}" for step, cost in model.training_curve)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")


def load_model(path) -> tuple[TrainedModel, NormalizationSpec | None]:
    """Read a model file written by save_model."""
    with open(path, "r", encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    if not lines or lines[0] != MODEL_FORMAT:
        raise ValueError(f"{path}: not a {MODEL_FORMAT!r} file")

    header: dict[str, str] = {}
    cursor = 1
    while cursor < len(lines) and "\t" in lines[cursor]:
        key, value = lines[cursor].split("\t", 1)
        header[key] = value
        cursor += 1
        if key == "params":
            break
    for required in ("method", "layers", "activation", "fingerprint", "params"):
        if required not in header:
            raise ValueError(f"{path}: missing {required!r} field")

    spec = NetworkSpec(
        tuple(int(n) for n in header["layers"].split(",")),
        activation=header["activation"],
    )
    n_params = int(header["params"])
    values = np.asarray([float(line) for line in lines[cursor:cursor + n_params]])
    cursor += n_params

    if cursor >= len(lines) or not lines[cursor].startswith("curve\t"):
        raise ValueError(f"{path}: missing training curve block")
    n_curve = int(lines[cursor].split("\t", 1)[1])
    cursor += 1
    curve = []
    for line in lines[cursor:cursor + n_curve]:
        step, cost = line.split("\t")
        curve.append((int(step), float(cost)))

    normalization = None
    if "normalization_min" in header:
        lo, hi = (float(v) for v in header["normalization_interval"].split(","))
        normalization = NormalizationSpec(
            np.asarray([float(v) for v in header["normalization_min"].split(",")]),
            np.asarray([float(v) for v in header["normalization_max"].split(",")]),
            interval=(lo, hi),
        )
        if normalization.col_min.shape[0] != len(COLUMNS):
            raise ValueError(f"{path}: normalization block has wrong column count")

    model = TrainedModel(spec, ParameterVector(values, spec), curve,
                         header["method"], header["fingerprint"])
    return model, normalization
