"""
Dataset tour: synthesis, file round trip, normalization, splitting
==================================================================

The synthetic generator covers a 3x3x3 factorial over drum-concave
distance (A), fan speed (B) and sieve openness (C), three repetitions
per cell, and reports broken seeds (BS), product loss (PL) and material
other than grain (MOG).
"""

import os
import tempfile

import numpy as np

from harvestnn import fit_normalization, ingest, split, synthesize, write_dataset

# 81 rows = 27 factor combinations x 3 repetitions
data = synthesize(seed=42)
print(f"rows: {len(data)}  provenance: {data.provenance}")
print("columns: A B C -> BS PL MOG")
print(f"first row: {data.values[0]}")

# the same seed always yields the same table
again = synthesize(seed=42)
print("seed 42 reproducible:", np.array_equal(data.values, again.values))

# files are plain tab-separated text and round-trip exactly
with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "dataset.tsv")
    write_dataset(data, path)
    loaded = ingest(path)
    print("file round trip exact:", np.array_equal(loaded.values, data.values))

# normalization squeezes every column into [0.1, 0.9]
norm = fit_normalization(data)
mapped = norm.apply(data.values)
print(f"mapped range: [{mapped.min():.3f}, {mapped.max():.3f}]")
print("invertible:", np.allclose(norm.invert(mapped), data.values, rtol=1e-12))

# 70/30 split, rounded half up: 57 training rows, 24 testing rows
parts = split(data, 0.7, seed=42)
print(f"split sizes: {len(parts.train_indices)} train, {len(parts.test_indices)} test")

# fitting the mapping on training rows only keeps the test side honest
norm_train = fit_normalization(data, parts.train_indices)
print(f"train-fitted BS column range: "
      f"[{float(norm_train.col_min[3]):.4f}, {float(norm_train.col_max[3]):.4f}]")
