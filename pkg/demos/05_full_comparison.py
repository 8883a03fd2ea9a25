"""
The full model comparison, end to end
=====================================

One call runs the whole protocol: synthesize the dataset, split it,
fit normalization on the training rows, train the gradient-descent
baseline plus three swarm budgets, and score everything on both splits.
A second call writes the report files.  Expect roughly ten seconds.
"""

import os

from harvestnn import OUTPUT_COLUMNS, comparison_preset, emit_reports, run

config = comparison_preset()
print("models:")
for model in config.models:
    budget = ("5000 epochs" if model.method == "ANN"
              else f"swarm {model.swarm_size} x {model.max_iterations} iterations")
    print(f"  {model.label:<20} {budget}")
print(f"architecture {config.structure}, train fraction {config.train_fraction}")

result = run(config, log=print)

# the testing-side summary, one row per model
print(f"\n{'label':<20} " + " ".join(f"{name + '_rmse':>10}" for name in OUTPUT_COLUMNS)
      + f" {'mean_rmse':>10}")
for model_result in result.models:
    report = model_result.test_report
    cells = " ".join(f"{report.per_output[name].rmse:10.4f}" for name in OUTPUT_COLUMNS)
    print(f"{model_result.label:<20} {cells} {report.mean_rmse:10.4f}")

# report emission is atomic: all files appear, or none do
out_dir = os.path.join(os.path.dirname(__file__), "comparison_run")
names = emit_reports(result, out_dir)
print(f"\nwrote {len(names)} report files to {out_dir}")
print("  " + "\n  ".join(names[:6]) + "\n  ...")
