"""Harvester experiment data: ingestion, synthesis, normalization, splitting.

A dataset is a table of six columns in canonical order: the three machine
settings A (threshing-drum/concave distance, mm), B (fan speed, rpm),
C (sieve openness, mm), followed by the three responses BS (broken seeds),
PL (product loss) and MOG (material other than grain).

Because no public field dataset exists for this machine, `synthesize` builds
a plausible stand-in: the full 3x3x3 factorial grid with 3 repetitions and
responses from a fixed quadratic response surface plus seeded noise.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

INPUT_COLUMNS = ("A", "B", "C")
OUTPUT_COLUMNS = ("BS", "PL", "MOG")
COLUMNS = INPUT_COLUMNS + OUTPUT_COLUMNS

# operating range of the fan on the modelled harvester; ingested rows outside
# it are suspicious but not rejected
FAN_SPEED_RANGE = (440.0, 1060.0)

# ---------------------------------------------------------------------------
# synthetic response surface, version 1
#
# Factor levels span the machine's adjustment ranges:
#   A in {3, 6.5, 10} mm, B in {440, 750, 1060} rpm, C in {5, 10, 15} mm.
# With a = (A-6.5)/3.5, b = (B-750)/310, c = (C-10)/5 (each -1, 0 or +1):
#   BS  = 0.42 - 0.16a + 0.06a^2 + 0.05b + 0.02c + 0.03ab
#   PL  = 20.0 - 2.5a  + 9.0b    + 4.0b^2 + 3.0c + 1.5bc
#   MOG = 2.2  + 0.3a  - 0.9b    + 0.55c  + 0.3c^2 + 0.25ac
# Noise is zero-mean gaussian with per-response scale noise_scale * base,
# base = (0.02, 1.0, 0.12).
# ---------------------------------------------------------------------------
SURFACE_VERSION = 1
FACTOR_LEVELS = {
    "A": (3.0, 6.5, 10.0),
    "B": (440.0, 750.0, 1060.0),
    "C": (5.0, 10.0, 15.0),
}
REPETITIONS = 3
NOISE_BASE_SCALE = (0.02, 1.0, 0.12)
DEFAULT_NOISE_SCALE = 1.0


def response_surface(a_mm: float, b_rpm: float, c_mm: float) -> tuple[float, float, float]:
    """Noise-free (BS, PL, MOG) of the version-1 surface at one setting."""
    a = (a_mm - 6.5) / 3.5
    b = (b_rpm - 750.0) / 310.0
    c = (c_mm - 10.0) / 5.0
    bs = 0.42 - 0.16 * a + 0.06 * a * a + 0.05 * b + 0.02 * c + 0.03 * a * b
    pl = 20.0 - 2.5 * a + 9.0 * b + 4.0 * b * b + 3.0 * c + 1.5 * b * c
    mog = 2.2 + 0.3 * a - 0.9 * b + 0.55 * c + 0.3 * c * c + 0.25 * a * c
    return bs, pl, mog


@dataclass(frozen=True)
class Sample:
    """One observation: three machine settings and three responses."""

    drum_concave_distance: float  # A, mm
    fan_speed: float              # B, rpm
    sieve_openness: float         # C, mm
    broken_seeds: float           # BS
    product_loss: float           # PL
    material_other_than_grain: float  # MOG


@dataclass(frozen=True)
class NormalizationSpec:
    """Per-column affine map [min, max] -> [lo, hi] and its exact inverse."""

    col_min: np.ndarray
    col_max: np.ndarray
    interval: tuple[float, float] = (0.1, 0.9)

    def __post_init__(self):
        col_min = np.asarray(self.col_min, dtype=np.float64)
        col_max = np.asarray(self.col_max, dtype=np.float64)
        if col_min.shape != (len(COLUMNS),) or col_max.shape != (len(COLUMNS),):
            raise ValueError(f"normalization needs one min and max per column, got "
                             f"{col_min.shape} and {col_max.shape}")
        for j, name in enumerate(COLUMNS):
            if not col_min[j] < col_max[j]:
                raise ValueError(f"column {name} is constant (min == max == {col_min[j]!r})")
        object.__setattr__(self, "col_min", col_min)
        object.__setattr__(self, "col_max", col_max)

    def _scale(self):
        lo, hi = self.interval
        return (hi - lo) / (self.col_max - self.col_min)

    def apply(self, values: np.ndarray) -> np.ndarray:
        """Map original units into the target interval, all six columns."""
        lo, _ = self.interval
        return lo + (np.asarray(values, dtype=np.float64) - self.col_min) * self._scale()

    def invert(self, normalized: np.ndarray) -> np.ndarray:
        """Inverse of apply, exact to ~1e-12 relative."""
        lo, _ = self.interval
        return self.col_min + (np.asarray(normalized, dtype=np.float64) - lo) / self._scale()

    # column-sliced views used by training and evaluation
    def normalize_inputs(self, inputs: np.ndarray) -> np.ndarray:
        lo, _ = self.interval
        k = len(INPUT_COLUMNS)
        return lo + (np.asarray(inputs, dtype=np.float64) - self.col_min[:k]) * self._scale()[:k]

    def normalize_targets(self, targets: np.ndarray) -> np.ndarray:
        lo, _ = self.interval
        k = len(INPUT_COLUMNS)
        return lo + (np.asarray(targets, dtype=np.float64) - self.col_min[k:]) * self._scale()[k:]

    def denormalize_targets(self, normalized: np.ndarray) -> np.ndarray:
        lo, _ = self.interval
        k = len(INPUT_COLUMNS)
        return self.col_min[k:] + (np.asarray(normalized, dtype=np.float64) - lo) / self._scale()[k:]


@dataclass
class Dataset:
    """Ordered table of samples with provenance and optional normalization."""

    values: np.ndarray  # (n, 6) float64 in canonical column order
    provenance: str     # "ingested" | "synthetic"
    normalization: NormalizationSpec | None = None
    meta: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[1] != len(COLUMNS):
            raise ValueError(f"dataset values must have shape (n, {len(COLUMNS)}), "
                             f"got {values.shape}")
        if values.shape[0] == 0:
            raise ValueError("empty dataset")
        if not np.all(np.isfinite(values)):
            raise ValueError("dataset contains non-finite values")
        if self.provenance not in ("ingested", "synthetic"):
            raise ValueError(f"unknown provenance {self.provenance!r}")
        self.values = values

    def __len__(self) -> int:
        return self.values.shape[0]

    @property
    def inputs(self) -> np.ndarray:
        return self.values[:, : len(INPUT_COLUMNS)]

    @property
    def targets(self) -> np.ndarray:
        return self.values[:, len(INPUT_COLUMNS):]

    @property
    def samples(self) -> list[Sample]:
        return [Sample(*row) for row in self.values]


@dataclass(frozen=True)
class SplitIndices:
    """Disjoint, exhaustive train/test row indices, fixed by a seed."""

    train_indices: np.ndarray
    test_indices: np.ndarray
    seed: int


def ingest(source) -> Dataset:
    """Read a delimited text file with header A,B,C,BS,PL,MOG (any order, any case).

    The delimiter (comma or tab) is auto-detected from the header line.
    Lines starting with '#' and blank lines are skipped.
    """
    with open(source, "r", encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    rows = [(i + 1, line) for i, line in enumerate(lines)
            if line.strip() and not line.lstrip().startswith("#")]
    if not rows:
        raise ValueError(f"{source}: empty dataset (no header row)")

    _, header = rows[0]
    delimiter = "\t" if "\t" in header else ","
    names = [cell.strip().upper() for cell in header.split(delimiter)]
    for name in COLUMNS:
        if name not in names:
            raise ValueError(f"{source}: missing column {name}")
    for name in names:
        if name not in COLUMNS:
            raise ValueError(f"{source}: unexpected column {name!r}")
    order = [names.index(name) for name in COLUMNS]

    data = []
    for lineno, line in rows[1:]:
        cells = [cell.strip() for cell in line.split(delimiter)]
        if len(cells) != len(names):
            raise ValueError(f"{source}: line {lineno} has {len(cells)} cells, "
                             f"expected {len(names)}")
        row = []
        for j in order:
            try:
                value = float(cells[j])
            except ValueError:
                raise ValueError(f"{source}: line {lineno}, column {names[j]}: "
                                 f"non-numeric cell {cells[j]!r}") from None
            if not math.isfinite(value):
                raise ValueError(f"{source}: line {lineno}, column {names[j]}: "
                                 f"non-finite cell {cells[j]!r}")
            row.append(value)
        data.append(row)
    if not data:
        raise ValueError(f"{source}: empty dataset (header only)")

    values = np.asarray(data, dtype=np.float64)
    fan = values[:, COLUMNS.index("B")]
    lo, hi = FAN_SPEED_RANGE
    outside = int(np.sum((fan < lo) | (fan > hi)))
    if outside:
        warnings.warn(
            f"{source}: {outside} row(s) have fan speed outside [{lo:g}, {hi:g}] rpm",
            stacklevel=2,
        )
    return Dataset(values, provenance="ingested")


def write_dataset(dataset: Dataset, path) -> None:
    """Write a dataset as tab-delimited text at full precision.

    Synthetic datasets carry a '#' comment line recording seed, noise scale
    and surface version, so that re-ingesting keeps the provenance visible.
    """
    lines = []
    if dataset.provenance == "synthetic":
        seed = dataset.meta.get("seed", "?")
        noise = dataset.meta.get("noise_scale", "?")
        surface = dataset.meta.get("surface", str(SURFACE_VERSION))
        lines.append(f"# synthetic dataset seed={seed} noise_scale={noise} surface={surface}")
    lines.append("\t".join(COLUMNS))
    for row in dataset.values:
        lines.append("\t".join(repr(float(v)) for v in row))
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")


def synthesize(seed: int = 0, noise_scale: float = DEFAULT_NOISE_SCALE) -> Dataset:
    """Full 3x3x3 factorial grid with 3 repetitions (81 rows) of surface responses.

    noise_scale multiplies the per-response base noise; 0 gives the exact
    surface regardless of seed.
    """
    if noise_scale < 0:
        raise ValueError(f"noise_scale must be non-negative, got {noise_scale}")
    rows = []
    for a in FACTOR_LEVELS["A"]:
        for b in FACTOR_LEVELS["B"]:
            for c in FACTOR_LEVELS["C"]:
                for _ in range(REPETITIONS):
                    rows.append((a, b, c) + response_surface(a, b, c))
    values = np.asarray(rows, dtype=np.float64)
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal((values.shape[0], len(OUTPUT_COLUMNS)))
    values[:, len(INPUT_COLUMNS):] += noise * (noise_scale * np.asarray(NOISE_BASE_SCALE))
    meta = {
        "seed": str(seed),
        "noise_scale": repr(float(noise_scale)),
        "surface": str(SURFACE_VERSION),
    }
    return Dataset(values, provenance="synthetic", meta=meta)


def fit_normalization(dataset: Dataset, indices=None,
                      interval: tuple[float, float] = (0.1, 0.9)) -> NormalizationSpec:
    """Per-column min/max over the given rows (all rows when indices is None).

    Fitting on the training rows only, then applying to test rows, avoids
    leaking test statistics; test values may then fall outside the target
    interval and are deliberately not clamped.
    """
    values = dataset.values if indices is None else dataset.values[np.asarray(indices)]
    if values.shape[0] == 0:
        raise ValueError("cannot fit normalization on zero rows")
    return NormalizationSpec(values.min(axis=0), values.max(axis=0), interval)


def split(dataset: Dataset, train_fraction: float, seed: int) -> SplitIndices:
    """Seeded uniform split; train size rounds half-up from fraction * n."""
    n = len(dataset)
    if n < 2:
        raise ValueError(f"need at least 2 rows to split, got {n}")
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")
    n_train = int(math.floor(train_fraction * n + 0.5))
    if n_train == 0 or n_train == n:
        raise ValueError(
            f"train_fraction {train_fraction} leaves an empty side for {n} rows "
            f"({n_train} train / {n - n_train} test)"
        )
    permutation = np.random.default_rng(seed).permutation(n)
    return SplitIndices(
        train_indices=permutation[:n_train].copy(),
        test_indices=permutation[n_train:].copy(),
        seed=seed,
    )
