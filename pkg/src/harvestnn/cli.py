"""Command line front end.

Subcommands: generate (synthesize a dataset), train (one model), run (the
full comparison), evaluate (saved model vs. a dataset), report (re-emit
report files from a saved result).  Every subcommand takes --seed,
--out-dir and --quiet.  Failures print a single `error: ...` line on
stderr and exit nonzero.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from .dataset import DEFAULT_NOISE_SCALE, ingest, write_dataset
from .experiment import (
    ExperimentConfig,
    ModelConfig,
    comparison_preset,
    emit_reports,
    parse_config,
    result_from_json,
    result_to_json,
    run,
)
from .metrics import evaluate
from .trainers import METHOD_ANN, METHOD_ANN_PSO, load_model, save_model


class _Parser(argparse.ArgumentParser):
    """argparse whose usage errors are one machine-parsable line."""

    def error(self, message):
        self.exit(2, f"error: {message}\n")


def _add_common(sub: argparse.ArgumentParser):
    sub.add_argument("--seed", type=int, default=None,
                     help="base seed (default: the config's, or 0)")
    sub.add_argument("--out-dir", default=".",
                     help="directory for written files (default: .)")
    sub.add_argument("--quiet", action="store_true",
                     help="suppress progress output")


def _parse_layers(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(cell.strip()) for cell in text.split(","))
    except ValueError:
        raise ValueError(f"layer sizes must be comma-separated integers, "
                         f"got {text!r}") from None


def _say(args, message: str):
    if not args.quiet:
        print(message)


def _evaluation_table(report) -> str:
    lines = ["output\trmse\tr\tr_pearson\tmae"]
    for name, scores in report.per_output.items():
        pearson = "nan" if scores.r_pearson is None else repr(scores.r_pearson)
        lines.append("\t".join([name, repr(scores.rmse), repr(scores.r_paper),
                                pearson, repr(scores.mae)]))
    return "\n".join(lines) + "\n"


def _cmd_generate(args) -> int:
    from .dataset import synthesize

    seed = 0 if args.seed is None else args.seed
    data = synthesize(seed=seed, noise_scale=args.noise_scale)
    os.makedirs(args.out_dir, exist_ok=True)
    path = os.path.join(args.out_dir, "dataset.tsv")
    write_dataset(data, path)
    _say(args, f"wrote {len(data)} rows to {path}")
    return 0


def _cmd_train(args) -> int:
    seed = 0 if args.seed is None else args.seed
    model_kwargs = {}
    if args.method == METHOD_ANN_PSO:
        if args.swarm_size is None or args.max_iterations is None:
            raise ValueError(f"{METHOD_ANN_PSO} needs --swarm-size and --max-iterations")
        model_kwargs = {"swarm_size": args.swarm_size,
                        "max_iterations": args.max_iterations}
    else:
        for key, value in (("learning_rate", args.learning_rate),
                           ("epochs", args.epochs),
                           ("init_scale", args.init_scale)):
            if value is not None:
                model_kwargs[key] = value
    model_config = ModelConfig(label=args.label or args.method,
                               method=args.method, **model_kwargs)
    config = ExperimentConfig(
        models=(model_config,),
        layer_sizes=_parse_layers(args.layer_sizes),
        train_fraction=args.train_fraction,
        seed=seed,
        dataset_path=args.data,
        noise_scale=args.noise_scale,
    )
    result = run(config, log=None if args.quiet else print)

    os.makedirs(args.out_dir, exist_ok=True)
    model_path = os.path.join(args.out_dir, "model.txt")
    save_model(result.models[0].model, model_path, result.normalization)
    curve = result.models[0].model.training_curve
    with open(os.path.join(args.out_dir, "convergence.tsv"), "w",
              encoding="utf-8") as handle:
        handle.write("step\tcost\n")
        handle.writelines(f"{step}\t{cost!r}\n" for step, cost in curve)
    _say(args, f"saved {model_path}")
    _say(args, "test metrics:\n" + _evaluation_table(result.models[0].test_report))
    return 0


def _cmd_run(args) -> int:
    if args.paper_preset:
        config = comparison_preset()
    else:
        with open(args.config, "r", encoding="utf-8") as handle:
            config = parse_config(handle.read())
    if args.seed is not None:
        config = replace(config, seed=args.seed)

    result = run(config, log=None if args.quiet else print)

    os.makedirs(args.out_dir, exist_ok=True)
    written = ["dataset.tsv", "result.json"]
    write_dataset(result.dataset, os.path.join(args.out_dir, "dataset.tsv"))
    with open(os.path.join(args.out_dir, "result.json"), "w",
              encoding="utf-8") as handle:
        handle.write(result_to_json(result))
    for i, model_result in enumerate(result.models, start=1):
        name = f"model_{i}.txt"
        save_model(model_result.model, os.path.join(args.out_dir, name),
                   result.normalization)
        written.append(name)
    written += emit_reports(result, args.out_dir)
    _say(args, f"wrote {len(written)} files to {args.out_dir}")
    return 0


def _cmd_evaluate(args) -> int:
    model, normalization = load_model(args.model)
    if normalization is None:
        raise ValueError(f"{args.model}: no normalization block; the model "
                         f"cannot be applied to data in original units")
    data = ingest(args.data)
    report = evaluate(model, data.inputs, data.targets, normalization, "test")
    table = _evaluation_table(report)
    os.makedirs(args.out_dir, exist_ok=True)
    with open(os.path.join(args.out_dir, "evaluation.tsv"), "w",
              encoding="utf-8") as handle:
        handle.write(table)
    if not args.quiet:
        sys.stdout.write(table)
        print(f"mean RMSE: {report.mean_rmse!r}")
    return 0


def _cmd_report(args) -> int:
    with open(args.result, "r", encoding="utf-8") as handle:
        result = result_from_json(handle.read())
    names = emit_reports(result, args.out_dir)
    _say(args, f"wrote {len(names)} files to {args.out_dir}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="harvestnn",
                     description="Harvester performance modelling: swarm-trained "
                                 "networks vs. a gradient-descent baseline.")
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("generate", help="synthesize a dataset file")
    sub.add_argument("--noise-scale", type=float, default=DEFAULT_NOISE_SCALE,
                     help=f"noise multiplier (default: {DEFAULT_NOISE_SCALE})")
    _add_common(sub)
    sub.set_defaults(handler=_cmd_generate)

    sub = commands.add_parser("train", help="train a single model")
    sub.add_argument("--method", choices=(METHOD_ANN, METHOD_ANN_PSO), required=True)
    sub.add_argument("--label", default=None, help="row label (default: the method)")
    sub.add_argument("--layer-sizes", default="3,6,2,3",
                     help="comma-separated layer widths (default: 3,6,2,3)")
    sub.add_argument("--train-fraction", type=float, default=0.7)
    sub.add_argument("--data", default=None,
                     help="dataset file (default: synthesize from the seed)")
    sub.add_argument("--noise-scale", type=float, default=DEFAULT_NOISE_SCALE)
    sub.add_argument("--swarm-size", type=int, default=None)
    sub.add_argument("--max-iterations", type=int, default=None)
    sub.add_argument("--learning-rate", type=float, default=None)
    sub.add_argument("--epochs", type=int, default=None)
    sub.add_argument("--init-scale", type=float, default=None)
    _add_common(sub)
    sub.set_defaults(handler=_cmd_train)

    sub = commands.add_parser("run", help="run the full comparison")
    source = sub.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", help="experiment config file (INI)")
    source.add_argument("--paper-preset", action="store_true",
                        help="the built-in four-model comparison")
    _add_common(sub)
    sub.set_defaults(handler=_cmd_run)

    sub = commands.add_parser("evaluate", help="score a saved model on a dataset")
    sub.add_argument("--model", required=True, help="model file from train/run")
    sub.add_argument("--data", required=True, help="dataset file")
    _add_common(sub)
    sub.set_defaults(handler=_cmd_evaluate)

    sub = commands.add_parser("report", help="re-emit reports from a result file")
    sub.add_argument("--result", required=True, help="result.json from run")
    _add_common(sub)
    sub.set_defaults(handler=_cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
