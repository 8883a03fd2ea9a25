"""Evaluation measures for paired actual/predicted series.

Two correlation readings are computed side by side: `r_paper` is the
root-form ratio sqrt(1 - sum((A-P)^2)/sum(A^2)) taken verbatim from the
model-comparison protocol this package reproduces, and `r_pearson` is the
standard sample Pearson correlation.  They disagree in general; reports
carry both.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import OUTPUT_COLUMNS, NormalizationSpec
from .network import predict_batch
from .trainers import TrainedModel

# counts how often the r_paper radicand went negative and was clamped to 0
_clamp_count = 0


def r_paper_clamp_count() -> int:
    return _clamp_count


def reset_r_paper_clamp_count() -> None:
    global _clamp_count
    _clamp_count = 0


@dataclass(frozen=True)
class PairedSeries:
    """Equal-length finite actual/predicted vectors."""

    actual: np.ndarray
    predicted: np.ndarray

    def __post_init__(self):
        actual = np.asarray(self.actual, dtype=np.float64)
        predicted = np.asarray(self.predicted, dtype=np.float64)
        if actual.ndim != 1 or predicted.ndim != 1:
            raise ValueError("paired series must be flat vectors")
        if actual.shape != predicted.shape:
            raise ValueError(
                f"actual has length {actual.shape[0]}, predicted has {predicted.shape[0]}"
            )
        if actual.shape[0] == 0:
            raise ValueError("paired series must be non-empty")
        if not (np.all(np.isfinite(actual)) and np.all(np.isfinite(predicted))):
            raise ValueError("paired series must be finite")
        object.__setattr__(self, "actual", actual)
        object.__setattr__(self, "predicted", predicted)

    def __len__(self) -> int:
        return self.actual.shape[0]


def rmse(series: PairedSeries) -> float:
    """Root mean square error sqrt(mean((A - P)^2))."""
    diff = series.actual - series.predicted
    return float(np.sqrt(np.mean(diff * diff)))


def mae(series: PairedSeries) -> float:
    """Mean absolute error mean(|A - P|)."""
    return float(np.mean(np.abs(series.actual - series.predicted)))


def r_paper(series: PairedSeries) -> float:
    """Root-form correlation sqrt(1 - sum((A-P)^2) / sum(A^2)).

    Not the Pearson formula: it is not shift-invariant and needs a non-zero
    actual series.  A negative radicand (predictions worse than predicting
    zero) is clamped to 0 and counted in r_paper_clamp_count().
    """
    denom = float(np.sum(series.actual * series.actual))
    if denom == 0.0:
        raise ValueError("r_paper is undefined for an all-zero actual series")
    diff = series.actual - series.predicted
    radicand = 1.0 - float(np.sum(diff * diff)) / denom
    if radicand < 0.0:
        global _clamp_count
        _clamp_count += 1
        radicand = 0.0
    return float(np.sqrt(radicand))


def pearson_defined(series: PairedSeries) -> bool:
    """True when the sample Pearson correlation exists (n >= 2, both variances > 0)."""
    if len(series) < 2:
        return False
    return bool(np.var(series.actual) > 0.0 and np.var(series.predicted) > 0.0)


def r_pearson(series: PairedSeries) -> float:
    """Standard sample Pearson correlation coefficient, in [-1, 1]."""
    if len(series) < 2:
        raise ValueError(f"Pearson correlation needs at least 2 points, got {len(series)}")
    da = series.actual - np.mean(series.actual)
    dp = series.predicted - np.mean(series.predicted)
    denom = float(np.sqrt(np.sum(da * da) * np.sum(dp * dp)))
    if denom == 0.0:
        raise ValueError("Pearson correlation is undefined for a zero-variance series")
    r = float(np.sum(da * dp)) / denom
    return max(-1.0, min(1.0, r))


@dataclass(frozen=True)
class OutputMetrics:
    """Scores of one output variable; r_pearson is None when undefined."""

    rmse: float
    r_paper: float
    r_pearson: float | None
    mae: float


@dataclass
class MetricsReport:
    """Per-output scores for one model on one split, in original units."""

    stage: str  # "train" | "test"
    per_output: dict[str, OutputMetrics]

    def __post_init__(self):
        if self.stage not in ("train", "test"):
            raise ValueError(f"unknown stage {self.stage!r}")

    @property
    def mean_rmse(self) -> float:
        return float(np.mean([m.rmse for m in self.per_output.values()]))


def score_series(series: PairedSeries) -> OutputMetrics:
    """All four measures of one paired series; Pearson omitted when undefined."""
    return OutputMetrics(
        rmse=rmse(series),
        r_paper=r_paper(series),
        r_pearson=r_pearson(series) if pearson_defined(series) else None,
        mae=mae(series),
    )


def evaluate(model: TrainedModel, inputs, targets, normalization: NormalizationSpec,
             stage: str, output_names=OUTPUT_COLUMNS) -> MetricsReport:
    """Score a model on one split, in original units.

    inputs and targets are in original units; inputs are normalized for the
    network and its outputs are denormalized back before any measure is
    computed, so report magnitudes are comparable across normalizations.
    """
    inputs = np.asarray(inputs, dtype=np.float64)
    targets = np.asarray(targets, dtype=np.float64)
    if inputs.shape[0] == 0:
        raise ValueError("cannot evaluate on an empty split")
    if targets.shape != (inputs.shape[0], len(output_names)):
        raise ValueError(
            f"targets have shape {targets.shape}, expected "
            f"({inputs.shape[0]}, {len(output_names)})"
        )
    predicted = predict_batch(model.spec, model.params, normalization.normalize_inputs(inputs))
    predicted = normalization.denormalize_targets(predicted)
    per_output = {
        name: score_series(PairedSeries(targets[:, k], predicted[:, k]))
        for k, name in enumerate(output_names)
    }
    return MetricsReport(stage=stage, per_output=per_output)
