"""Command-line front door: dataset conversion, batch training, model
evaluation, projection export, timing sweeps, and the HTTP service.

Exit codes: 0 success, 1 usage error, 2 data/format error, 3 training
diverged.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from pathlib import Path

from .errors import DigitBenchError, TrainingDivergedError
from .evaluator import evaluate, save_eval_csv
from .ingest import ConversionConfig, convert_dataset, read_idx_dataset
from .network import (
    NetworkTopology,
    TrainConfig,
    init_network,
    load_model,
    save_model,
    train,
)
from .patterns import load_patterns, save_patterns
from .projection import build_features, pca_project, save_projection_csv
from .synth import pattern_corpus, write_idx_corpus

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_DIVERGED = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage problems; the CLI contract reserves 2 for
    # data errors, so remap.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_train_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--learning-rate", type=float, default=TrainConfig.learning_rate)
    parser.add_argument("--momentum", type=float, default=TrainConfig.momentum)
    parser.add_argument("--mse-threshold", type=float, default=TrainConfig.mse_threshold)
    parser.add_argument("--max-epochs", type=int, default=TrainConfig.max_epochs)
    parser.add_argument("--seed", type=int, default=0, help="weight initialization seed")
    parser.add_argument("--hidden-size", type=int, default=48)


def _config_from(args) -> TrainConfig:
    return TrainConfig(
        learning_rate=args.learning_rate,
        momentum=args.momentum,
        mse_threshold=args.mse_threshold,
        max_epochs=args.max_epochs,
        rng_seed=args.seed,
    )


def _print_table(header: list[str], rows: list[list], as_csv: bool) -> None:
    if as_csv:
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(header)
        writer.writerows(rows)
        sys.stdout.write(out.getvalue())
        return
    widths = [max(len(str(h)), max((len(str(r[i])) for r in rows), default=0))
              for i, h in enumerate(header)]
    print("  ".join(str(h).ljust(w) for h, w in zip(header, widths)))
    for row in rows:
        print("  ".join(str(v).ljust(w) for v, w in zip(row, widths)))


def _report_row(name, n, report):
    return [name, n, report.epochs_run, f"{report.final_mse:.6f}",
            f"{report.training_accuracy:.4f}", f"{report.wall_time_seconds:.3f}",
            str(report.converged).lower()]


_REPORT_HEADER = ["name", "patterns", "epochs", "mse", "accuracy", "seconds", "converged"]


def cmd_convert(args) -> int:
    images, labels = read_idx_dataset(args.images, args.labels)
    config = ConversionConfig(threshold=args.threshold)
    pattern_set = convert_dataset(images, labels, config)
    save_patterns(pattern_set, args.out)
    removed = len(images) - len(pattern_set)
    print(f"converted {len(images)} images -> {len(pattern_set)} patterns "
          f"({removed} duplicates removed) -> {args.out}")
    return EXIT_OK


def cmd_train(args) -> int:
    pattern_set = load_patterns(args.patterns)
    X, y = pattern_set.to_arrays()
    config = _config_from(args)
    net = init_network(NetworkTopology(hidden_size=args.hidden_size), seed=config.rng_seed)
    report = train(net, list(zip(X, y)), config)
    save_model(net, args.out)
    _print_table(_REPORT_HEADER, [_report_row(Path(args.out).name, len(pattern_set), report)],
                 args.csv)
    return EXIT_OK


def cmd_eval(args) -> int:
    test_set = load_patterns(args.patterns)
    models = [(Path(p).name, load_model(p)) for p in args.models]
    report = evaluate(models, test_set)
    save_eval_csv(report, args.out)
    _print_table(["model", "accuracy"],
                 [[name, f"{acc:.4f}"] for name, acc in report.per_model], args.csv)
    print(f"per-pattern report -> {args.out}")
    return EXIT_OK


def cmd_project(args) -> int:
    pattern_set = load_patterns(args.patterns)
    net = load_model(args.model) if args.model else None
    projection = pca_project(build_features(pattern_set, net))
    save_projection_csv(projection, args.out)
    ev = projection.explained_variance
    print(f"projected {len(pattern_set)} patterns "
          f"(explained variance {ev[0]:.3f}, {ev[1]:.3f}) -> {args.out}")
    return EXIT_OK


def cmd_bench(args) -> int:
    pattern_set = load_patterns(args.patterns)
    sizes = sorted({int(s) for s in args.sizes.split(",") if s.strip()})
    if not sizes or sizes[0] < 1:
        raise DigitBenchError(f"bad size list {args.sizes!r}")
    if sizes[-1] > len(pattern_set):
        raise DigitBenchError(
            f"largest size {sizes[-1]} exceeds the {len(pattern_set)} available patterns"
        )
    rows = []
    for n in sizes:
        subset = pattern_set.patterns[:n]
        X = [p.to_array() for p in subset]
        y = [p.label for p in subset]
        net = init_network(NetworkTopology(hidden_size=args.hidden_size), seed=args.seed)
        report = train(net, list(zip(X, y)), _config_from(args))
        rows.append(_report_row(f"n={n}", n, report))
    _print_table(_REPORT_HEADER, rows, args.csv)
    return EXIT_OK


def cmd_synth(args) -> int:
    if args.kind == "patterns":
        corpus = pattern_corpus(per_digit=args.count // 10 or 1, seed=args.seed)
        save_patterns(corpus, args.out)
        print(f"wrote {len(corpus)} patterns -> {args.out}")
    else:
        labels_out = args.labels_out or str(args.out) + ".labels"
        write_idx_corpus(args.count, args.out, labels_out, seed=args.seed)
        print(f"wrote {args.count} images -> {args.out}, labels -> {labels_out}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    frontend = Path(args.frontend) if args.frontend else Path("frontend/dist")
    app = create_app(data_dir=Path(args.data_dir),
                     frontend_dir=frontend if frontend.exists() else None)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="digitbench",
                     description="Digit-recognition workbench: train, test, and inspect "
                                 "small pattern-recognition networks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="convert IDX images+labels to an NNPAT pattern file")
    p.add_argument("--images", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--threshold", type=int, default=85,
                   help="two-tone cutoff: intensity >= threshold marks a cell")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("train", help="train a network on a pattern file and save the model")
    p.add_argument("--patterns", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--csv", action="store_true", help="machine-readable output")
    _add_train_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="evaluate model files against a labeled pattern file")
    p.add_argument("--models", nargs="+", required=True)
    p.add_argument("--patterns", required=True)
    p.add_argument("--out", required=True, help="per-pattern CSV report path")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("project", help="export a 2D PCA projection of a pattern file")
    p.add_argument("--patterns", required=True)
    p.add_argument("--model", help="augment features with this model's hidden activations")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("bench", help="train on growing prefixes and time each run")
    p.add_argument("--patterns", required=True)
    p.add_argument("--sizes", required=True, help="comma-separated sample sizes")
    p.add_argument("--csv", action="store_true")
    _add_train_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("synth", help="generate a synthetic practice dataset")
    p.add_argument("--kind", choices=["patterns", "idx"], default="patterns")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--labels-out", help="label file path for --kind idx")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("serve", help="start the workbench HTTP service")
    p.add_argument("--host", default=os.environ.get("DIGITBENCH_HOST", "127.0.0.1"))
    p.add_argument("--port", type=int, default=int(os.environ.get("DIGITBENCH_PORT", "8750")))
    p.add_argument("--data-dir", default=os.environ.get("DIGITBENCH_DATA_DIR", "."),
                   help="directory for server-side pattern and model files")
    p.add_argument("--frontend", help="serve this static UI directory at / "
                                      "(default: ./frontend/dist when present)")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TrainingDivergedError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DIVERGED
    except (DigitBenchError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
