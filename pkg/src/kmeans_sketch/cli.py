"""Command-line harness.

Subcommands: ``gen-synth`` (synthetic dataset to CSV), ``reduce`` (one
dimensionality reduction), ``cluster`` (k-means on a CSV), ``bench`` (the
full method/r sweep with CSV and SVG output), and ``verify`` (empirical
checker suites).  ``--seed`` is accepted everywhere, defaults to the
``KMEANS_SKETCH_SEED`` environment variable, and is echoed in the output.
"""

from __future__ import annotations

import argparse
import os
import sys

from .bench import DEFAULT_R_GRID, BenchConfig, emit_csv, emit_plot, run_bench
from .datagen import CsvFormatError, Dataset, SynthSpec, gen_synth, load_csv, save_csv
from .kmeans import INIT_METHODS, KMeansConfig, accuracy, lloyd, normalized_objective, objective
from .linalg import ConvergenceError
from .reducers import METHOD_KINDS, ReductionMethod, run_reduction
from .verify import SUITE_NAMES, report_to_json, verify_suite

__all__ = ["main"]


def _default_seed() -> int:
    raw = os.environ.get("KMEANS_SKETCH_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def _add_seed(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=_default_seed(),
                        help="master RNG seed (default: $KMEANS_SKETCH_SEED or 0)")


def _add_kmeans_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--replicates", type=int, default=5,
                        help="independent k-means restarts (default 5)")
    parser.add_argument("--max-iters", type=int, default=500,
                        help="iteration cap per restart (default 500)")
    parser.add_argument("--init", choices=INIT_METHODS, default="uniform-sample",
                        help="centroid seeding strategy")


def _load_dataset(args) -> Dataset:
    ds = load_csv(args.data, has_labels=args.labels)
    if getattr(args, "k", None):
        ds = Dataset(points=ds.points, labels=ds.labels, k=args.k)
    return ds


def _cmd_gen_synth(args) -> int:
    spec = SynthSpec(centers=args.k, dim=args.n, points_per_center=args.per_center,
                     side=args.side, variance=args.variance, seed=args.seed)
    ds = gen_synth(spec)
    save_csv(ds, args.out)
    print(f"gen-synth: wrote {ds.points.shape[0]}x{ds.points.shape[1]} dataset "
          f"with {spec.centers} labeled clusters to {args.out} seed={args.seed}")
    return 0


def _cmd_reduce(args) -> int:
    ds = _load_dataset(args)
    k = args.k or ds.k
    if k < 2:
        raise ValueError("need --k >= 2 (or a labeled dataset that implies it)")
    method = ReductionMethod(args.method, args.epsilon)
    result = run_reduction(ds.points, k, method, args.r, seed=args.seed)
    save_csv(Dataset(points=result.c, labels=ds.labels, k=ds.k), args.out)
    print(f"reduce: method={method.kind} r={result.r} elapsed_ms={result.elapsed_ms:.3f} "
          f"out={args.out} seed={args.seed}")
    return 0


def _cmd_cluster(args) -> int:
    ds = _load_dataset(args)
    k = args.k or ds.k
    if k < 1:
        raise ValueError("need --k (or a labeled dataset that implies it)")
    cfg = KMeansConfig(k=k, max_iters=args.max_iters, replicates=args.replicates,
                       seed=args.seed, init=args.init)
    asg = lloyd(ds.points, cfg)
    obj = objective(ds.points, asg)
    norm = normalized_objective(ds.points, asg)
    line = f"cluster: k={k} objective={obj:.6g} normalized_objective={norm:.6g}"
    if ds.labels is not None:
        line += f" accuracy={accuracy(asg, ds.labels):.4f}"
    print(line + f" seed={args.seed}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            for lab in asg.labels:
                fh.write(f"{int(lab)}\n")
        print(f"cluster: wrote labels to {args.out}")
    return 0


def _parse_methods(raw: str) -> tuple:
    methods = []
    for token in raw.split(","):
        token = token.strip()
        if token:
            methods.append(token)
    if not methods:
        raise ValueError("--methods must name at least one method")
    return tuple(methods)


def _cmd_bench(args) -> int:
    ds = _load_dataset(args)
    k = args.k or ds.k
    if k < 2:
        raise ValueError("need --k >= 2 (or a labeled dataset that implies it)")
    ds = Dataset(points=ds.points, labels=ds.labels, k=k)
    methods = tuple(ReductionMethod(kind, args.epsilon) for kind in _parse_methods(args.methods))
    r_grid = tuple(int(tok) for tok in args.r.split(",")) if args.r else DEFAULT_R_GRID
    kcfg = KMeansConfig(k=k, max_iters=args.max_iters, replicates=args.replicates,
                        seed=args.seed, init=args.init)
    cfg = BenchConfig(methods=methods, kmeans=kcfg, r_grid=r_grid, trials=args.trials,
                      seed=args.seed, include_full_baseline=not args.no_baseline)
    records = run_bench(ds, cfg)
    emit_csv(records, args.out, include_timing=not args.no_timing)
    print(f"bench: wrote {len(records)} records to {args.out} seed={args.seed}")
    for metric, path in (("time", args.plot_time), ("objective", args.plot_objective),
                         ("accuracy", args.plot_accuracy)):
        if path:
            emit_plot(records, metric, path)
            print(f"bench: wrote {metric} plot to {path}")
    return 0


def _cmd_verify(args) -> int:
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    all_passed = True
    for name in names:
        report = verify_suite(name, seed=args.seed, trials=args.trials)
        all_passed &= report.passed
        if args.json:
            print(report_to_json(report))
        else:
            status = "PASS" if report.passed else "FAIL"
            print(f"[{status}] suite={report.suite} trials={report.trials} "
                  f"pass_fraction={report.pass_fraction:.4f} threshold={report.threshold:g} "
                  f"seed={args.seed} :: {report.details}")
    return 0 if all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kmeans-sketch",
        description="Dimensionality reduction for k-means: feature sampling, "
                    "sign projections, and SVD features, with a benchmark harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-synth", help="generate a labeled Gaussian-mixture CSV")
    p.add_argument("--k", type=int, required=True, help="number of clusters")
    p.add_argument("--n", type=int, required=True, help="dimensions")
    p.add_argument("--per-center", type=int, required=True, help="points per cluster")
    p.add_argument("--side", type=float, default=2000.0, help="hypercube side for centers")
    p.add_argument("--variance", type=float, default=1.0, help="within-cluster variance")
    p.add_argument("--out", required=True, help="output CSV path")
    _add_seed(p)
    p.set_defaults(func=_cmd_gen_synth)

    p = sub.add_parser("reduce", help="run one dimensionality reduction")
    p.add_argument("--data", required=True, help="input CSV path")
    p.add_argument("--labels", action="store_true", help="final CSV column holds labels")
    p.add_argument("--method", choices=METHOD_KINDS, required=True)
    p.add_argument("--k", type=int, default=0, help="number of clusters")
    p.add_argument("--r", type=int, default=20, help="features to keep (ignored by svd family)")
    p.add_argument("--epsilon", type=float, default=1.0 / 3.0,
                   help="accuracy knob for the approximate-SVD variants")
    p.add_argument("--out", required=True, help="output CSV path")
    _add_seed(p)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("cluster", help="k-means on a CSV dataset")
    p.add_argument("--data", required=True)
    p.add_argument("--labels", action="store_true")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--out", default="", help="optional path for the assignment labels")
    _add_kmeans_flags(p)
    _add_seed(p)
    p.set_defaults(func=_cmd_cluster)

    p = sub.add_parser("bench", help="full benchmark sweep")
    p.add_argument("--data", required=True)
    p.add_argument("--labels", action="store_true")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--methods", default="sampl-svd,sampl-approx-svd,rp,svd,approx-svd",
                   help="comma-separated method list")
    p.add_argument("--r", default="", help="comma-separated r grid (default 5,10,...,100)")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--epsilon", type=float, default=1.0 / 3.0)
    p.add_argument("--no-baseline", action="store_true",
                   help="skip the full-dimensional k-means rows")
    p.add_argument("--no-timing", action="store_true",
                   help="zero the timing columns (for byte-stable comparisons)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--plot-time", default="", help="optional SVG path")
    p.add_argument("--plot-objective", default="", help="optional SVG path")
    p.add_argument("--plot-accuracy", default="", help="optional SVG path")
    _add_kmeans_flags(p)
    _add_seed(p)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("verify", help="run empirical checker suites")
    p.add_argument("--suite", required=True, choices=SUITE_NAMES + ("all",))
    p.add_argument("--trials", type=int, default=None, help="override the suite default")
    p.add_argument("--json", action="store_true", help="one JSON object per report")
    _add_seed(p)
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError, CsvFormatError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
