"""
The network: a small sigmoid multilayer perceptron on a flat vector
===================================================================

Every trainer in this package sees the network only as a flat float64
vector, so the forward pass and the vector layout are the whole story.
"""

import numpy as np

from harvestnn import (
    NetworkSpec,
    ParameterVector,
    flatten_parameters,
    forward,
    parameter_count,
    predict_batch,
    unflatten_parameters,
)

# the 3-6-2-3 architecture: 3 inputs, hidden layers of 6 and 2, 3 outputs
spec = NetworkSpec((3, 6, 2, 3))
n = parameter_count(spec.layer_sizes)
print(f"structure: {'-'.join(str(w) for w in spec.layer_sizes)}")
print(f"parameters: {n}")  # (3*6+6) + (6*2+2) + (2*3+3) = 47

# all-zero parameters: every sigmoid sees 0, so every output is 0.5
params = ParameterVector(np.zeros(n), spec)
print("zero-parameter output:", forward(spec, params, [5.0, -2.0, 0.3]))

# random parameters give outputs strictly inside (0, 1)
rng = np.random.default_rng(7)
params = ParameterVector(rng.uniform(-1.0, 1.0, n), spec)
out = forward(spec, params, [6.5, 750.0, 10.0])
print("random-parameter output:", out)

# a batch of rows goes through in one shot
batch = rng.uniform(0.1, 0.9, size=(4, 3))
print("batch predictions:\n", predict_batch(spec, params, batch))

# the flat vector unpacks into per-transition weights and biases and back
layers = unflatten_parameters(params)
print("transition shapes:", [(w.shape, b.shape) for w, b in layers])
rebuilt = flatten_parameters(spec, layers)
print("layout round trip exact:", np.array_equal(rebuilt.values, params.values))
