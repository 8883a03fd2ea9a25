"""Feed-forward multilayer perceptron with sigmoid units.

Every non-input unit computes the logistic function of a weighted sum of the
previous layer plus a bias.  All weights and biases of a network live in one
flat parameter vector with a fixed canonical layout, so that external
optimizers can search over networks as plain real vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# The logistic function saturates to machine 0/1 long before |z| = 500;
# clamping the pre-activation keeps exp() finite when an optimizer wanders
# far out.  The output is additionally capped at the largest double below 1
# so that outputs stay in the open interval (0, 1) even at the clamp.
_PREACT_LIMIT = 500.0
_MAX_OUTPUT = float(np.nextafter(1.0, 0.0))


def sigmoid(z):
    """Numerically safe logistic function 1 / (1 + exp(-z))."""
    z = np.clip(z, -_PREACT_LIMIT, _PREACT_LIMIT)
    return np.minimum(1.0 / (1.0 + np.exp(-z)), _MAX_OUTPUT)


@dataclass(frozen=True)
class NetworkSpec:
    """Architecture of a fully connected feed-forward network.

    `layer_sizes` lists units per layer, input layer first.  The logistic
    activation is applied to every non-input layer, output layer included,
    so targets must be scaled into (0, 1).
    """

    layer_sizes: tuple[int, ...]
    activation: str = "sigmoid"

    def __post_init__(self):
        sizes = tuple(int(n) for n in self.layer_sizes)
        object.__setattr__(self, "layer_sizes", sizes)
        if len(sizes) < 2:
            raise ValueError(f"need at least 2 layers (input and output), got {len(sizes)}")
        if any(n < 1 for n in sizes):
            raise ValueError(f"every layer needs at least 1 unit, got {sizes}")
        if self.activation != "sigmoid":
            raise ValueError(f"unsupported activation {self.activation!r}")

    @property
    def input_size(self) -> int:
        return self.layer_sizes[0]

    @property
    def output_size(self) -> int:
        return self.layer_sizes[-1]


def parameter_count(spec) -> int:
    """Number of weights plus biases of a network.

    Accepts a NetworkSpec or a raw sequence of layer sizes; a single-layer
    sequence has no transitions and counts 0.
    """
    sizes = spec.layer_sizes if isinstance(spec, NetworkSpec) else tuple(spec)
    return sum(n_in * n_out + n_out for n_in, n_out in zip(sizes, sizes[1:]))


@dataclass(frozen=True)
class ParameterVector:
    """Flat weight+bias vector of a network, in canonical layout.

    For each layer transition in order: all weights in output-unit-major
    order (the full incoming row of output unit 0, then unit 1, ...),
    followed by that transition's biases.
    """

    values: np.ndarray
    spec: NetworkSpec

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise ValueError(f"parameter values must be a flat vector, got shape {values.shape}")
        expected = parameter_count(self.spec)
        if values.shape[0] != expected:
            raise ValueError(
                f"parameter vector has length {values.shape[0]}, "
                f"spec {self.spec.layer_sizes} needs {expected}"
            )
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.shape[0]


def unflatten_parameters(params: ParameterVector) -> list[tuple[np.ndarray, np.ndarray]]:
    """Split a flat vector into per-transition (weights, biases).

    weights[k] has shape (n_out, n_in): row i holds the incoming weights of
    output unit i, matching the canonical layout.
    """
    sizes = params.spec.layer_sizes
    layers = []
    offset = 0
    for n_in, n_out in zip(sizes, sizes[1:]):
        w = params.values[offset:offset + n_in * n_out].reshape(n_out, n_in)
        offset += n_in * n_out
        b = params.values[offset:offset + n_out]
        offset += n_out
        layers.append((w, b))
    return layers


def flatten_parameters(spec: NetworkSpec, layers) -> ParameterVector:
    """Inverse of unflatten_parameters: pack (weights, biases) pairs into a flat vector."""
    sizes = spec.layer_sizes
    if len(layers) != len(sizes) - 1:
        raise ValueError(f"expected {len(sizes) - 1} layer transitions, got {len(layers)}")
    parts = []
    for (w, b), n_in, n_out in zip(layers, sizes, sizes[1:]):
        w = np.asarray(w, dtype=np.float64)
        b = np.asarray(b, dtype=np.float64)
        if w.shape != (n_out, n_in):
            raise ValueError(f"weight matrix has shape {w.shape}, expected {(n_out, n_in)}")
        if b.shape != (n_out,):
            raise ValueError(f"bias vector has shape {b.shape}, expected {(n_out,)}")
        parts.append(w.ravel())
        parts.append(b)
    return ParameterVector(np.concatenate(parts), spec)


@dataclass
class ActivationRecord:
    """Per-layer outputs retained from one forward pass, input echo first."""

    layers: list[np.ndarray]

    @property
    def output(self) -> np.ndarray:
        return self.layers[-1]


def _check_params(spec: NetworkSpec, params: ParameterVector):
    if params.spec != spec:
        raise ValueError(
            f"parameter vector built for {params.spec.layer_sizes} "
            f"does not match spec {spec.layer_sizes}"
        )


def _forward_batch(layer_params, x):
    a = x
    for w, b in layer_params:
        a = sigmoid(a @ w.T + b)
    return a


def forward(spec: NetworkSpec, params: ParameterVector, x) -> np.ndarray:
    """Run one input vector through the network; returns the output vector.

    Every output component lies in the open interval (0, 1).
    """
    _check_params(spec, params)
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (spec.input_size,):
        raise ValueError(
            f"input has length {x.shape[0] if x.ndim == 1 else x.shape}, "
            f"expected {spec.input_size}"
        )
    return _forward_batch(unflatten_parameters(params), x[np.newaxis, :])[0]


def forward_with_trace(spec: NetworkSpec, params: ParameterVector, x) -> ActivationRecord:
    """As forward, but retains every layer's outputs (input echo included)."""
    _check_params(spec, params)
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (spec.input_size,):
        raise ValueError(
            f"input has length {x.shape[0] if x.ndim == 1 else x.shape}, "
            f"expected {spec.input_size}"
        )
    row = x[np.newaxis, :]
    record = [x.copy()]
    for w, b in unflatten_parameters(params):
        row = sigmoid(row @ w.T + b)
        record.append(row[0].copy())
    return ActivationRecord(record)


def predict_batch(spec: NetworkSpec, params: ParameterVector, inputs) -> np.ndarray:
    """Forward a batch of input vectors.

    Row i of the result matches forward(spec, params, inputs[i]) to within
    BLAS roundoff (batched and single-row matmuls may differ in the last ulp).
    """
    _check_params(spec, params)
    if isinstance(inputs, np.ndarray) and inputs.ndim == 2 and inputs.dtype == np.float64:
        batch = inputs
        if batch.shape[1] != spec.input_size:
            raise ValueError(
                f"input row 0 has length {batch.shape[1]}, expected {spec.input_size}"
            )
    else:
        rows = [np.asarray(row, dtype=np.float64) for row in inputs]
        for i, row in enumerate(rows):
            if row.shape != (spec.input_size,):
                raise ValueError(
                    f"input row {i} has length "
                    f"{row.shape[0] if row.ndim == 1 else row.shape}, "
                    f"expected {spec.input_size}"
                )
        if not rows:
            return np.empty((0, spec.output_size))
        batch = np.stack(rows)
    return _forward_batch(unflatten_parameters(params), batch)
