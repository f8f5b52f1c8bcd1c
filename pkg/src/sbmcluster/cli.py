"""Command line entry point: ``gen``, ``run``, ``sweep`` and ``bench``.

Exit codes: 0 success, 1 configuration error, 2 data error, 3 no valid
clustering.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import data as data_mod
from .errors import ConfigError, DataError, NoValidClusteringError
from .harness import (
    METHODS,
    ExperimentConfig,
    default_grid,
    emit_table,
    labels_csv,
    load_dataset,
    run_benchmark,
    run_config,
    select_threshold_and_k,
    sweep_csv,
    sweep_report,
)
from .simgraph import METRICS

log = logging.getLogger("sbmcluster")

EXIT_CODES = {ConfigError: 1, DataError: 2, NoValidClusteringError: 3}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common(p):
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--seed", type=int, default=0, help="seed for the fitting procedures")
    p.add_argument("--data-seed", type=int, default=1, help="seed for synthetic datasets")
    p.add_argument("--scaling", choices=data_mod.SCALING_MODES, default="none")
    p.add_argument("--metric", choices=METRICS, default="manhattan")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=None, help="default min(40, n - 1)")
    p.add_argument("--t-min", type=float, default=0.05)
    p.add_argument("--t-max", type=float, default=0.95)
    p.add_argument("--t-step", type=float, default=0.05)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--max-sweeps", type=int, default=100)
    p.add_argument("--label-column", default=None, help="label column of a CSV dataset")
    p.add_argument("--nmi", choices=("arithmetic", "geometric"), default="arithmetic", help="NMI normalization")
    p.add_argument("--format", choices=("csv", "markdown"), default="csv")
    p.add_argument("-o", "--output", default=None, help="write output here instead of stdout")


def build_parser():
    parser = _Parser(prog="sbmcluster", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="write a synthetic dataset as CSV")
    gen.add_argument("--dataset", choices=sorted(data_mod.SYNTHETIC), required=True)
    gen.add_argument("--n", type=int, default=None)
    gen.add_argument("--noise", type=float, default=0.05)
    gen.add_argument("--seed", type=int, default=1)
    gen.add_argument("-o", "--output", default=None)
    gen.add_argument("-v", "--verbose", action="store_true")

    run = sub.add_parser("run", help="model selection for one dataset and method")
    run.add_argument("--dataset", required=True, help="iris, two_moons, circles, ina or a CSV path")
    run.add_argument("--method", choices=METHODS, required=True)
    run.add_argument("--labels-out", default=None, help="write the chosen labels as index,label CSV")
    _common(run)

    sweep = sub.add_parser("sweep", help="threshold x K silhouette/NMI grid for the SBM")
    sweep.add_argument("--dataset", required=True)
    _common(sweep)

    bench = sub.add_parser("bench", help="run the full benchmark grid")
    bench.add_argument("--datasets", nargs="+", default=["iris", "two_moons", "circles", "ina"])
    bench.add_argument("--methods", nargs="+", choices=METHODS, default=list(METHODS))
    bench.add_argument("--metrics", nargs="+", choices=METRICS, default=list(METRICS))
    _common(bench)
    return parser


def _config(args, dataset, method, metric=None) -> ExperimentConfig:
    return ExperimentConfig(
        dataset=dataset,
        method=method,
        metric=metric or args.metric,
        k_min=args.k_min,
        k_max=args.k_max,
        t_min=args.t_min,
        t_max=args.t_max,
        t_step=args.t_step,
        alpha=args.alpha,
        restarts=args.restarts,
        max_sweeps=args.max_sweeps,
        seed=args.seed,
        data_seed=args.data_seed,
        label_column=args.label_column,
        scaling=args.scaling,
        nmi_normalization=args.nmi,
    ).validate()


def _emit(text, output):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_gen(args):
    gen = data_mod.SYNTHETIC[args.dataset]
    kwargs = {"seed": args.seed}
    if args.n is not None:
        kwargs["n"] = args.n
    if args.dataset != "ina":
        kwargs["noise"] = args.noise
    _emit(data_mod.to_csv(gen(**kwargs)), args.output)


def _cmd_run(args):
    res = run_config(_config(args, args.dataset, args.method))
    log.info("%s/%s: K=%s silhouette=%.4f (%.1fs)", args.dataset, args.method, res.k, res.silhouette, res.wall_time)
    if args.labels_out:
        Path(args.labels_out).write_text(labels_csv(res.labels), encoding="utf-8")
    _emit(emit_table([res], args.format), args.output)


def _cmd_sweep(args):
    cfg = _config(args, args.dataset, "sbm")
    ds = load_dataset(cfg)
    rows = sweep_report(ds, cfg)
    best = select_threshold_and_k(ds, cfg, rows)
    log.info("best cell: t=%g K=%d silhouette=%.4f", best.threshold, best.k, best.silhouette)
    _emit(sweep_csv(rows), args.output)


def _cmd_bench(args):
    base = _config(args, args.datasets[0], "kmeans")
    overrides = {
        k: getattr(base, k)
        for k in (
            "k_min", "k_max", "t_min", "t_max", "t_step", "alpha", "restarts", "max_sweeps",
            "seed", "data_seed", "label_column", "scaling", "nmi_normalization",
        )
    }
    configs = [c for c in default_grid(args.datasets, args.metrics, **overrides) if c.method in args.methods]
    results = run_benchmark(configs)
    for res in results:
        if res.error:
            log.warning("%s/%s/%s failed: %s", res.config.dataset, res.config.method, res.config.metric, res.error)
    _emit(emit_table(results, args.format), args.output)


COMMANDS = {"gen": _cmd_gen, "run": _cmd_run, "sweep": _cmd_sweep, "bench": _cmd_bench}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors exit 1, --help exits 0
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        COMMANDS[args.command](args)
    except tuple(EXIT_CODES) as exc:
        print(f"sbmcluster: {exc}", file=sys.stderr)
        for cls, code in EXIT_CODES.items():
            if isinstance(exc, cls):
                return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
