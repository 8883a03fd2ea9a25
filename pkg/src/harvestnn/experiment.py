"""Full comparison protocol: data, one shared split, four models, reports.

A run builds (or ingests) the dataset, fits normalization on the training
rows, trains every configured model on the identical split, evaluates on
both splits in original units, and can emit the whole result as delimited
text reports plus a JSON result file that round-trips losslessly.

Everything is a pure function of the config: same config, same bytes out.
"""

from __future__ import annotations

import configparser
import json
import os
import platform
import re
from dataclasses import dataclass, replace

import numpy as np

from .dataset import (
    DEFAULT_NOISE_SCALE,
    INPUT_COLUMNS,
    OUTPUT_COLUMNS,
    SURFACE_VERSION,
    Dataset,
    NormalizationSpec,
    fit_normalization,
    ingest,
    split,
    synthesize,
)
from .metrics import MetricsReport, OutputMetrics, PairedSeries, evaluate
from .network import NetworkSpec, ParameterVector, parameter_count, predict_batch
from .pso import PsoConfig
from .trainers import (
    METHOD_ANN,
    METHOD_ANN_PSO,
    BackpropConfig,
    TrainObjective,
    TrainedModel,
    train_backprop,
    train_pso,
)

RESULT_FORMAT = "harvestnn-result 1"
MANIFEST_FORMAT = "harvestnn-manifest 1"

# per-model fields that only make sense for one training method
_PSO_KEYS = ("swarm_size", "max_iterations", "inertia_weight", "cognitive_accel",
             "social_accel", "velocity_clamp")
_ANN_KEYS = ("learning_rate", "epochs", "init_scale")


@dataclass(frozen=True)
class ModelConfig:
    """One row of the comparison: a label, a method, and its settings.

    Unset optional fields fall back to the trainer defaults; fields of the
    other method must stay unset.
    """

    label: str
    method: str  # METHOD_ANN | METHOD_ANN_PSO
    swarm_size: int | None = None
    max_iterations: int | None = None
    inertia_weight: float | None = None
    cognitive_accel: float | None = None
    social_accel: float | None = None
    velocity_clamp: float | None = None
    learning_rate: float | None = None
    epochs: int | None = None
    init_scale: float | None = None

    def __post_init__(self):
        if self.method not in (METHOD_ANN, METHOD_ANN_PSO):
            raise ValueError(f"unknown method {self.method!r}")
        if not self.label or any(ch in self.label for ch in "\t\n\r"):
            raise ValueError(f"label must be non-empty plain text, got {self.label!r}")
        if self.method == METHOD_ANN_PSO:
            if self.swarm_size is None or self.max_iterations is None:
                raise ValueError(f"model {self.label!r}: {METHOD_ANN_PSO} needs "
                                 f"swarm_size and max_iterations")
            wrong = [k for k in _ANN_KEYS if getattr(self, k) is not None]
        else:
            wrong = [k for k in _PSO_KEYS if getattr(self, k) is not None]
        if wrong:
            raise ValueError(f"model {self.label!r}: {', '.join(wrong)} do not "
                             f"apply to method {self.method}")

    def pso_config(self, seed: int) -> PsoConfig:
        overrides = {k: getattr(self, k) for k in _PSO_KEYS[2:]
                     if getattr(self, k) is not None}
        return PsoConfig(swarm_size=self.swarm_size, max_iterations=self.max_iterations,
                         seed=seed, **overrides)

    def backprop_config(self, seed: int) -> BackpropConfig:
        overrides = {k: getattr(self, k) for k in _ANN_KEYS
                     if getattr(self, k) is not None}
        return BackpropConfig(seed=seed, **overrides)


@dataclass(frozen=True)
class ExperimentConfig:
    """Dataset source, architecture, split fraction, seed, and the model list.

    The dataset is synthesized from (seed, noise_scale) unless dataset_path
    points at a delimited text file; the network must then have 3 inputs and
    3 outputs to match the canonical columns.
    """

    models: tuple[ModelConfig, ...]
    layer_sizes: tuple[int, ...] = (3, 6, 2, 3)
    train_fraction: float = 0.7
    seed: int = 0
    dataset_path: str | None = None
    noise_scale: float = DEFAULT_NOISE_SCALE

    def __post_init__(self):
        object.__setattr__(self, "models", tuple(self.models))
        object.__setattr__(self, "layer_sizes", tuple(int(n) for n in self.layer_sizes))
        if not self.models:
            raise ValueError("need at least one model")
        NetworkSpec(self.layer_sizes)  # validates sizes
        if self.layer_sizes[0] != len(INPUT_COLUMNS):
            raise ValueError(f"first layer must have {len(INPUT_COLUMNS)} units "
                             f"(one per input column), got {self.layer_sizes[0]}")
        if self.layer_sizes[-1] != len(OUTPUT_COLUMNS):
            raise ValueError(f"last layer must have {len(OUTPUT_COLUMNS)} units "
                             f"(one per output column), got {self.layer_sizes[-1]}")
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError(f"train_fraction must be in (0, 1), got {self.train_fraction}")
        if self.noise_scale < 0:
            raise ValueError(f"noise_scale must be non-negative, got {self.noise_scale}")

    @property
    def structure(self) -> str:
        return "-".join(str(n) for n in self.layer_sizes)


def comparison_preset() -> ExperimentConfig:
    """The four-model comparison on the synthetic dataset.

    One gradient-descent baseline plus three swarm budgets (100x186,
    200x180, 300x221) on the 3-6-2-3 architecture, 70/30 split.
    """
    return ExperimentConfig(models=(
        ModelConfig(label="ANN", method=METHOD_ANN),
        ModelConfig(label="ANN-PSO (100, 186)", method=METHOD_ANN_PSO,
                    swarm_size=100, max_iterations=186),
        ModelConfig(label="ANN-PSO (200, 180)", method=METHOD_ANN_PSO,
                    swarm_size=200, max_iterations=180),
        ModelConfig(label="ANN-PSO (300, 221)", method=METHOD_ANN_PSO,
                    swarm_size=300, max_iterations=221),
    ))


@dataclass
class ModelResult:
    """One trained model with its scores and prediction pairs on both splits."""

    label: str
    model: TrainedModel
    train_report: MetricsReport
    test_report: MetricsReport
    # stage -> output name -> (actual, predicted) in original units
    series: dict[str, dict[str, PairedSeries]]

    def report(self, stage: str) -> MetricsReport:
        if stage == "train":
            return self.train_report
        if stage == "test":
            return self.test_report
        raise ValueError(f"unknown stage {stage!r}")

    def deviations(self, stage: str = "test") -> dict[str, np.ndarray]:
        """Per-output (predicted - actual), row-aligned with the series."""
        return {name: pairs.predicted - pairs.actual
                for name, pairs in self.series[stage].items()}


@dataclass
class ExperimentResult:
    """Everything a run produced, sufficient to re-emit every report."""

    config: ExperimentConfig
    provenance: str  # "synthetic" | "ingested"
    seeds: dict[str, int]
    train_indices: tuple[int, ...]
    test_indices: tuple[int, ...]
    normalization: NormalizationSpec
    models: list[ModelResult]
    dataset: Dataset | None = None  # carried in-process, not serialized

    def __post_init__(self):
        if len(self.models) != len(self.config.models):
            raise ValueError(f"{len(self.models)} results for "
                             f"{len(self.config.models)} configured models")
        sizes = {"train": len(self.train_indices), "test": len(self.test_indices)}
        for result in self.models:
            for stage, expected in sizes.items():
                for name, pairs in result.series[stage].items():
                    if len(pairs) != expected:
                        raise ValueError(
                            f"model {result.label!r}: {stage} series {name} has "
                            f"{len(pairs)} pairs, split has {expected} rows"
                        )


def run(config: ExperimentConfig, log=None) -> ExperimentResult:
    """Execute the full protocol; deterministic given the config.

    Trainer seeds are derived from the experiment seed (dataset and split use
    it directly, model i gets seed + 1 + i) so one integer pins the run.
    Any training failure aborts the whole run with the failing model label.
    """
    say = log or (lambda message: None)
    if config.dataset_path is not None:
        data = ingest(config.dataset_path)
        say(f"ingested {len(data)} rows from {config.dataset_path}")
    else:
        data = synthesize(seed=config.seed, noise_scale=config.noise_scale)
        say(f"synthesized {len(data)} rows (seed {config.seed}, "
            f"noise_scale {config.noise_scale})")

    parts = split(data, config.train_fraction, seed=config.seed)
    norm = fit_normalization(data, parts.train_indices)
    spec = NetworkSpec(config.layer_sizes)

    train_x = data.inputs[parts.train_indices]
    train_y = data.targets[parts.train_indices]
    test_x = data.inputs[parts.test_indices]
    test_y = data.targets[parts.test_indices]
    objective = TrainObjective(spec, norm.normalize_inputs(train_x),
                               norm.normalize_targets(train_y))

    seeds = {"experiment": config.seed, "split": parts.seed}
    if config.dataset_path is None:
        seeds["dataset"] = config.seed

    results = []
    for i, model_config in enumerate(config.models):
        model_seed = config.seed + 1 + i
        seeds[f"model_{i + 1}"] = model_seed
        say(f"training {model_config.label} (seed {model_seed})")
        try:
            if model_config.method == METHOD_ANN_PSO:
                trained = train_pso(objective, model_config.pso_config(model_seed))
            else:
                trained = train_backprop(objective, model_config.backprop_config(model_seed))
        except Exception as exc:
            raise RuntimeError(f"model {model_config.label!r} failed: {exc}") from exc

        series = {}
        for stage, inputs, targets in (("train", train_x, train_y),
                                       ("test", test_x, test_y)):
            predicted = predict_batch(spec, trained.params, norm.normalize_inputs(inputs))
            predicted = norm.denormalize_targets(predicted)
            series[stage] = {name: PairedSeries(targets[:, k], predicted[:, k])
                             for k, name in enumerate(OUTPUT_COLUMNS)}
        results.append(ModelResult(
            label=model_config.label,
            model=trained,
            train_report=evaluate(trained, train_x, train_y, norm, "train"),
            test_report=evaluate(trained, test_x, test_y, norm, "test"),
            series=series,
        ))
        say(f"  train mean-RMSE {results[-1].train_report.mean_rmse:.6g}, "
            f"test mean-RMSE {results[-1].test_report.mean_rmse:.6g}")

    return ExperimentResult(
        config=config,
        provenance=data.provenance,
        seeds=seeds,
        train_indices=tuple(int(i) for i in parts.train_indices),
        test_indices=tuple(int(i) for i in parts.test_indices),
        normalization=norm,
        models=results,
        dataset=data,
    )


@dataclass
class SeedSweep:
    """Repeated runs of one config under different seeds, with medians."""

    seeds: tuple[int, ...]
    results: list[ExperimentResult]
    median_train_mean_rmse: dict[str, float]  # label -> median over seeds
    median_test_mean_rmse: dict[str, float]


def run_with_seeds(config: ExperimentConfig, seeds, log=None) -> SeedSweep:
    """Repeat run() under each seed; medians tame single-run noise.

    Orderings between stochastic trainers flip run to run, so comparisons
    should be read off the medians, not any single result.
    """
    seeds = tuple(int(s) for s in seeds)
    if not seeds:
        raise ValueError("need at least one seed")
    results = [run(replace(config, seed=s), log=log) for s in seeds]
    labels = [m.label for m in config.models]
    median_train = {}
    median_test = {}
    for k, label in enumerate(labels):
        median_train[label] = float(np.median(
            [r.models[k].train_report.mean_rmse for r in results]))
        median_test[label] = float(np.median(
            [r.models[k].test_report.mean_rmse for r in results]))
    return SeedSweep(seeds, results, median_train, median_test)


# ---------------------------------------------------------------------------
# config file format: INI with one [experiment] section and [model.N] blocks
# ---------------------------------------------------------------------------

_EXPERIMENT_KEYS = {
    "layer_sizes": str,
    "train_fraction": float,
    "seed": int,
    "dataset_path": str,
    "noise_scale": float,
}
_MODEL_KEYS = {
    "label": str,
    "method": str,
    "swarm_size": int,
    "max_iterations": int,
    "inertia_weight": float,
    "cognitive_accel": float,
    "social_accel": float,
    "velocity_clamp": float,
    "learning_rate": float,
    "epochs": int,
    "init_scale": float,
}


def render_config(config: ExperimentConfig) -> str:
    """Write a config as INI text; parse_config reads it back identically."""
    lines = ["[experiment]",
             "layer_sizes = " + ",".join(str(n) for n in config.layer_sizes),
             f"train_fraction = {config.train_fraction!r}",
             f"seed = {config.seed}"]
    if config.dataset_path is not None:
        lines.append(f"dataset_path = {config.dataset_path}")
    else:
        lines.append(f"noise_scale = {config.noise_scale!r}")
    for i, model in enumerate(config.models, start=1):
        lines += ["", f"[model.{i}]",
                  f"label = {model.label}",
                  f"method = {model.method}"]
        for key in list(_MODEL_KEYS)[2:]:
            value = getattr(model, key)
            if value is not None:
                lines.append(f"{key} = {value!r}" if isinstance(value, float)
                             else f"{key} = {value}")
    return "\n".join(lines) + "\n"


def _coerce(section: str, key: str, raw: str, kind):
    try:
        return kind(raw)
    except ValueError:
        raise ValueError(f"config: [{section}] {key} = {raw!r} is not a valid "
                         f"{kind.__name__}") from None


def parse_config(text: str) -> ExperimentConfig:
    """Parse INI config text; unknown sections or keys are rejected by name."""
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ValueError(f"config: {exc}") from None

    model_sections = []
    for section in parser.sections():
        if section == "experiment":
            continue
        match = re.fullmatch(r"model\.(\d+)", section)
        if not match:
            raise ValueError(f"config: unknown section [{section}]")
        model_sections.append((int(match.group(1)), section))
    model_sections.sort()
    if not model_sections:
        raise ValueError("config: no [model.N] sections")
    if [n for n, _ in model_sections] != list(range(1, len(model_sections) + 1)):
        raise ValueError("config: [model.N] sections must be numbered 1..n "
                         f"without gaps, got {[n for n, _ in model_sections]}")

    experiment_kwargs = {}
    if parser.has_section("experiment"):
        for key, raw in parser.items("experiment"):
            if key not in _EXPERIMENT_KEYS:
                raise ValueError(f"config: unknown key {key!r} in [experiment]")
            if key == "layer_sizes":
                experiment_kwargs[key] = tuple(
                    _coerce("experiment", key, cell.strip(), int)
                    for cell in raw.split(","))
            else:
                experiment_kwargs[key] = _coerce("experiment", key, raw,
                                                 _EXPERIMENT_KEYS[key])
    if "dataset_path" in experiment_kwargs and "noise_scale" in experiment_kwargs:
        raise ValueError("config: dataset_path and noise_scale are mutually "
                         "exclusive (file source vs. synthesis)")

    models = []
    for _, section in model_sections:
        kwargs = {}
        for key, raw in parser.items(section):
            if key not in _MODEL_KEYS:
                raise ValueError(f"config: unknown key {key!r} in [{section}]")
            kwargs[key] = _coerce(section, key, raw, _MODEL_KEYS[key])
        for required in ("label", "method"):
            if required not in kwargs:
                raise ValueError(f"config: [{section}] is missing {required!r}")
        models.append(ModelConfig(**kwargs))

    return ExperimentConfig(models=tuple(models), **experiment_kwargs)


# ---------------------------------------------------------------------------
# result JSON: lossless round trip of everything the reports need
# ---------------------------------------------------------------------------

def _config_to_dict(config: ExperimentConfig) -> dict:
    models = []
    for model in config.models:
        entry = {"label": model.label, "method": model.method}
        entry.update({key: getattr(model, key) for key in list(_MODEL_KEYS)[2:]
                      if getattr(model, key) is not None})
        models.append(entry)
    return {
        "layer_sizes": list(config.layer_sizes),
        "train_fraction": config.train_fraction,
        "seed": config.seed,
        "dataset_path": config.dataset_path,
        "noise_scale": config.noise_scale,
        "models": models,
    }


def _config_from_dict(payload: dict) -> ExperimentConfig:
    models = tuple(ModelConfig(**entry) for entry in payload["models"])
    return ExperimentConfig(
        models=models,
        layer_sizes=tuple(payload["layer_sizes"]),
        train_fraction=payload["train_fraction"],
        seed=payload["seed"],
        dataset_path=payload["dataset_path"],
        noise_scale=payload["noise_scale"],
    )


def _report_to_dict(report: MetricsReport) -> dict:
    return {name: {"rmse": m.rmse, "r_paper": m.r_paper,
                   "r_pearson": m.r_pearson, "mae": m.mae}
            for name, m in report.per_output.items()}


def _report_from_dict(stage: str, payload: dict) -> MetricsReport:
    per_output = {name: OutputMetrics(**entry) for name, entry in payload.items()}
    return MetricsReport(stage=stage, per_output=per_output)


def result_to_json(result: ExperimentResult) -> str:
    models = []
    for model_result in result.models:
        trained = model_result.model
        models.append({
            "label": model_result.label,
            "method": trained.method_tag,
            "fingerprint": trained.config_fingerprint,
            "params": [float(v) for v in trained.params.values],
            "curve": [[int(step), float(cost)] for step, cost in trained.training_curve],
            "reports": {"train": _report_to_dict(model_result.train_report),
                        "test": _report_to_dict(model_result.test_report)},
            "series": {
                stage: {name: {"actual": [float(v) for v in pairs.actual],
                               "predicted": [float(v) for v in pairs.predicted]}
                        for name, pairs in by_output.items()}
                for stage, by_output in model_result.series.items()
            },
        })
    payload = {
        "format": RESULT_FORMAT,
        "config": _config_to_dict(result.config),
        "provenance": result.provenance,
        "seeds": result.seeds,
        "train_indices": list(result.train_indices),
        "test_indices": list(result.test_indices),
        "normalization": {
            "col_min": [float(v) for v in result.normalization.col_min],
            "col_max": [float(v) for v in result.normalization.col_max],
            "interval": list(result.normalization.interval),
        },
        "models": models,
    }
    return json.dumps(payload, indent=1) + "\n"


def result_from_json(text: str) -> ExperimentResult:
    """Rebuild an ExperimentResult written by result_to_json (dataset stays None)."""
    payload = json.loads(text)
    if payload.get("format") != RESULT_FORMAT:
        raise ValueError(f"not a {RESULT_FORMAT!r} file "
                         f"(format = {payload.get('format')!r})")
    config = _config_from_dict(payload["config"])
    spec = NetworkSpec(config.layer_sizes)
    models = []
    for entry in payload["models"]:
        trained = TrainedModel(
            spec=spec,
            params=ParameterVector(np.asarray(entry["params"], dtype=np.float64), spec),
            training_curve=[(int(step), float(cost)) for step, cost in entry["curve"]],
            method_tag=entry["method"],
            config_fingerprint=entry["fingerprint"],
        )
        series = {
            stage: {name: PairedSeries(np.asarray(pair["actual"]),
                                       np.asarray(pair["predicted"]))
                    for name, pair in by_output.items()}
            for stage, by_output in entry["series"].items()
        }
        models.append(ModelResult(
            label=entry["label"],
            model=trained,
            train_report=_report_from_dict("train", entry["reports"]["train"]),
            test_report=_report_from_dict("test", entry["reports"]["test"]),
            series=series,
        ))
    norm = payload["normalization"]
    return ExperimentResult(
        config=config,
        provenance=payload["provenance"],
        seeds={key: int(value) for key, value in payload["seeds"].items()},
        train_indices=tuple(int(i) for i in payload["train_indices"]),
        test_indices=tuple(int(i) for i in payload["test_indices"]),
        normalization=NormalizationSpec(np.asarray(norm["col_min"]),
                                        np.asarray(norm["col_max"]),
                                        tuple(norm["interval"])),
        models=models,
    )


# ---------------------------------------------------------------------------
# report emission
# ---------------------------------------------------------------------------

def _fmt(value: float | None) -> str:
    return "nan" if value is None else repr(float(value))


def _metrics_table(result: ExperimentResult, stage: str) -> str:
    header = ["model", "label", "method", "structure"]
    for name in OUTPUT_COLUMNS:
        header += [f"{name}_rmse", f"{name}_r", f"{name}_r_pearson"]
    header.append("mean_rmse")
    lines = ["\t".join(header)]
    for i, model_result in enumerate(result.models, start=1):
        report = model_result.report(stage)
        cells = [str(i), model_result.label, model_result.model.method_tag,
                 result.config.structure]
        for name in OUTPUT_COLUMNS:
            scores = report.per_output[name]
            cells += [_fmt(scores.rmse), _fmt(scores.r_paper), _fmt(scores.r_pearson)]
        cells.append(_fmt(report.mean_rmse))
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def _scatter_file(pairs: PairedSeries) -> str:
    lines = ["actual\tpredicted"]
    lines += [f"{float(a)!r}\t{float(p)!r}"
              for a, p in zip(pairs.actual, pairs.predicted)]
    return "\n".join(lines) + "\n"


def _deviation_file(model_result: ModelResult) -> str:
    deviations = model_result.deviations("test")
    lines = ["sample\t" + "\t".join(OUTPUT_COLUMNS)]
    columns = [deviations[name] for name in OUTPUT_COLUMNS]
    for row, values in enumerate(zip(*columns), start=1):
        lines.append(str(row) + "\t" + "\t".join(repr(float(v)) for v in values))
    return "\n".join(lines) + "\n"


def _convergence_file(model_result: ModelResult) -> str:
    lines = ["step\tcost"]
    lines += [f"{step}\t{cost!r}" for step, cost in model_result.model.training_curve]
    return "\n".join(lines) + "\n"


def _package_version() -> str:
    try:
        from importlib.metadata import version
        return version("harvestnn")
    except Exception:
        return "unknown"


def _manifest(result: ExperimentResult) -> str:
    config = result.config
    lines = [MANIFEST_FORMAT,
             f"package_version\t{_package_version()}",
             f"python_version\t{platform.python_version()}",
             f"numpy_version\t{np.__version__}",
             f"provenance\t{result.provenance}"]
    if config.dataset_path is not None:
        lines.append(f"dataset_path\t{config.dataset_path}")
    else:
        lines.append(f"surface_version\t{SURFACE_VERSION}")
        lines.append(f"noise_scale\t{config.noise_scale!r}")
    lines += [f"dataset_rows\t{len(result.train_indices) + len(result.test_indices)}",
              f"train_rows\t{len(result.train_indices)}",
              f"test_rows\t{len(result.test_indices)}",
              f"layer_sizes\t{','.join(str(n) for n in config.layer_sizes)}",
              f"parameter_count\t{parameter_count(config.layer_sizes)}",
              f"train_fraction\t{config.train_fraction!r}"]
    for key, value in result.seeds.items():
        lines.append(f"seed_{key}\t{value}")
    for i, model_result in enumerate(result.models, start=1):
        lines += [f"model_{i}_label\t{model_result.label}",
                  f"model_{i}_method\t{model_result.model.method_tag}",
                  f"model_{i}_fingerprint\t{model_result.model.config_fingerprint}"]
    return "\n".join(lines) + "\n"


def emit_reports(result: ExperimentResult, out_dir) -> list[str]:
    """Write every report file into out_dir; returns the sorted file names.

    Files are staged under temporary names and renamed at the end, so a
    failed emission leaves no partial report behind.  The set: per-stage
    metrics tables, per-model per-output scatter files (both splits),
    per-model test-split deviation files, per-model convergence traces,
    the run manifest, and the exact config.
    """
    files = {
        "metrics_training.tsv": _metrics_table(result, "train"),
        "metrics_testing.tsv": _metrics_table(result, "test"),
        "manifest.txt": _manifest(result),
        "config.ini": render_config(result.config),
    }
    for i, model_result in enumerate(result.models, start=1):
        for stage in ("train", "test"):
            for name in OUTPUT_COLUMNS:
                files[f"scatter_model{i}_{stage}_{name}.tsv"] = \
                    _scatter_file(model_result.series[stage][name])
        files[f"deviation_model{i}.tsv"] = _deviation_file(model_result)
        files[f"convergence_model{i}.tsv"] = _convergence_file(model_result)

    os.makedirs(out_dir, exist_ok=True)
    staged = []
    try:
        for name, text in files.items():
            temp_path = os.path.join(out_dir, f".{name}.tmp")
            with open(temp_path, "w", encoding="utf-8") as handle:
                handle.write(text)
            staged.append((temp_path, os.path.join(out_dir, name)))
        for temp_path, final_path in staged:
            os.replace(temp_path, final_path)
    except BaseException:
        for temp_path, _ in staged:
            try:
                os.unlink(temp_path)
            except OSError:
                pass
        raise
    return sorted(files)
