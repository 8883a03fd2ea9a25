"""Harvester performance modelling: swarm-trained networks vs. backprop.

Small feed-forward sigmoid networks predict broken seeds, product loss and
material-other-than-grain from three machine settings.  Weights are found
either by particle swarm optimization over the flat parameter vector or by
plain gradient descent, and the two are compared on a shared 70/30 split.
"""

from .dataset import (
    COLUMNS,
    INPUT_COLUMNS,
    OUTPUT_COLUMNS,
    Dataset,
    NormalizationSpec,
    SplitIndices,
    fit_normalization,
    ingest,
    response_surface,
    split,
    synthesize,
    write_dataset,
)
from .experiment import (
    ExperimentConfig,
    ExperimentResult,
    ModelConfig,
    ModelResult,
    SeedSweep,
    comparison_preset,
    emit_reports,
    parse_config,
    render_config,
    result_from_json,
    result_to_json,
    run,
    run_with_seeds,
)
from .metrics import (
    MetricsReport,
    OutputMetrics,
    PairedSeries,
    evaluate,
    mae,
    r_paper,
    r_pearson,
    rmse,
    score_series,
)
from .network import (
    NetworkSpec,
    ParameterVector,
    flatten_parameters,
    forward,
    forward_with_trace,
    parameter_count,
    predict_batch,
    sigmoid,
    unflatten_parameters,
)
from .pso import PsoConfig, SwarmState, initialize_swarm, optimize, step
from .trainers import (
    METHOD_ANN,
    METHOD_ANN_PSO,
    BackpropConfig,
    TrainObjective,
    TrainedModel,
    TrainingDivergedError,
    backprop_gradient,
    load_model,
    mse_cost,
    objective_cost,
    save_model,
    train_backprop,
    train_pso,
)

__version__ = "0.1.0"

__all__ = [
    "COLUMNS", "INPUT_COLUMNS", "OUTPUT_COLUMNS",
    "Dataset", "NormalizationSpec", "SplitIndices",
    "fit_normalization", "ingest", "response_surface", "split", "synthesize",
    "write_dataset",
    "ExperimentConfig", "ExperimentResult", "ModelConfig", "ModelResult",
    "SeedSweep", "comparison_preset", "emit_reports", "parse_config",
    "render_config", "result_from_json", "result_to_json", "run",
    "run_with_seeds",
    "MetricsReport", "OutputMetrics", "PairedSeries", "evaluate",
    "mae", "r_paper", "r_pearson", "rmse", "score_series",
    "NetworkSpec", "ParameterVector", "flatten_parameters", "forward",
    "forward_with_trace", "parameter_count", "predict_batch", "sigmoid",
    "unflatten_parameters",
    "PsoConfig", "SwarmState", "initialize_swarm", "optimize", "step",
    "METHOD_ANN", "METHOD_ANN_PSO", "BackpropConfig", "TrainObjective",
    "TrainedModel", "TrainingDivergedError", "backprop_gradient",
    "load_model", "mse_cost", "objective_cost", "save_model",
    "train_backprop", "train_pso",
    "__version__",
]
