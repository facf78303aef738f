"""Benchmark harness: sweep reduction methods over a grid of feature counts,
cluster each reduced dataset, and score the resulting partitions against the
full-dimensional data.  Emits CSV rows and standalone SVG charts.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from ._rng import derive_seed
from .datagen import Dataset
from .kmeans import KMeansConfig, accuracy, lloyd, normalized_objective, objective
from .reducers import ReductionMethod, run_reduction

__all__ = [
    "BenchConfig",
    "BenchRecord",
    "DEFAULT_R_GRID",
    "run_bench",
    "emit_csv",
    "emit_plot",
    "aggregate_series",
]

log = logging.getLogger(__name__)

DEFAULT_R_GRID = tuple(range(5, 101, 5))

CSV_HEADER = "method,r,trial,seed,reduce_ms,cluster_ms,objective,normalized_objective,accuracy"

PLOT_METRICS = ("time", "objective", "accuracy")

# Reserved method-stream index for the full-dimensional baseline rows.
_BASELINE_STREAM = 1_000_000


@dataclass(frozen=True)
class BenchConfig:
    methods: tuple
    kmeans: KMeansConfig
    r_grid: tuple = DEFAULT_R_GRID
    trials: int = 5
    seed: int = 0
    include_full_baseline: bool = True

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        grid = tuple(self.r_grid)
        if any(r < 1 for r in grid) or list(grid) != sorted(grid):
            raise ValueError("r_grid must be ascending positive integers")


@dataclass(frozen=True)
class BenchRecord:
    method: str
    r: int
    trial: int
    seed: int
    reduce_ms: float
    cluster_ms: float
    objective: float
    normalized_objective: float
    accuracy: Optional[float]


def _score(ds: Dataset, asg, reduce_ms: float, cluster_ms: float,
           method: str, r: int, trial: int, seed: int) -> BenchRecord:
    return BenchRecord(
        method=method,
        r=r,
        trial=trial,
        seed=seed,
        reduce_ms=reduce_ms,
        cluster_ms=cluster_ms,
        objective=objective(ds.points, asg),
        normalized_objective=normalized_objective(ds.points, asg),
        accuracy=accuracy(asg, ds.labels) if ds.labels is not None else None,
    )


def run_bench(ds: Dataset, cfg: BenchConfig) -> list:
    """One record per (method, r, trial), in that canonical order, plus one
    full-dimensional baseline record per trial (method ``kmeans``, r = n).

    Every record derives an independent child seed from the master seed and
    its own coordinates, so the record set is reproducible regardless of
    execution order.  Selection methods skip r values above the input width
    with a warning.
    """
    if ds.k < 2:
        raise ValueError("benchmark needs a dataset with k >= 2")
    a = ds.points
    n = a.shape[1]
    k = cfg.kmeans.k
    records = []
    for mi, method in enumerate(cfg.methods):
        r_values = [k] if method.is_svd_family else list(cfg.r_grid)
        for r in r_values:
            if method.is_selection and r > n:
                log.warning("skipping %s at r=%d: dataset has only %d features",
                            method.kind, r, n)
                continue
            for trial in range(cfg.trials):
                rec_seed = derive_seed(cfg.seed, mi, r, trial)
                red = run_reduction(a, k, method, r, seed=rec_seed)
                kcfg = replace(cfg.kmeans, seed=derive_seed(rec_seed, 1))
                start = time.perf_counter()
                asg = lloyd(red.c, kcfg)
                cluster_ms = (time.perf_counter() - start) * 1000.0
                records.append(_score(ds, asg, red.elapsed_ms, cluster_ms,
                                      method.kind, red.r, trial, rec_seed))
    if cfg.include_full_baseline:
        for trial in range(cfg.trials):
            rec_seed = derive_seed(cfg.seed, _BASELINE_STREAM, n, trial)
            kcfg = replace(cfg.kmeans, seed=derive_seed(rec_seed, 1))
            start = time.perf_counter()
            asg = lloyd(a, kcfg)
            cluster_ms = (time.perf_counter() - start) * 1000.0
            records.append(_score(ds, asg, 0.0, cluster_ms,
                                  "kmeans", n, trial, rec_seed))
    return records


def emit_csv(records: Sequence[BenchRecord], path, include_timing: bool = True) -> None:
    """Write records under the fixed header; the accuracy cell is empty when
    labels were absent.  With ``include_timing`` off the timing columns are
    zeroed so runs are byte-comparable."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(CSV_HEADER + "\n")
        for rec in records:
            reduce_ms = rec.reduce_ms if include_timing else 0.0
            cluster_ms = rec.cluster_ms if include_timing else 0.0
            acc = "" if rec.accuracy is None else repr(float(rec.accuracy))
            fh.write(",".join([
                rec.method,
                str(rec.r),
                str(rec.trial),
                str(rec.seed),
                repr(float(reduce_ms)),
                repr(float(cluster_ms)),
                repr(float(rec.objective)),
                repr(float(rec.normalized_objective)),
                acc,
            ]) + "\n")


def aggregate_series(records: Sequence[BenchRecord], metric: str) -> dict:
    """Trial-averaged metric per method: {method: [(r, mean), ...]} with r
    ascending.  ``time`` sums the reduction and clustering milliseconds;
    ``objective`` uses the normalized objective."""
    if metric not in PLOT_METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {PLOT_METRICS}")
    buckets: dict = {}
    for rec in records:
        if metric == "time":
            value = rec.reduce_ms + rec.cluster_ms
        elif metric == "objective":
            value = rec.normalized_objective
        else:
            if rec.accuracy is None:
                continue
            value = rec.accuracy
        buckets.setdefault(rec.method, {}).setdefault(rec.r, []).append(value)
    series = {}
    for method, per_r in buckets.items():
        series[method] = [(r, sum(vals) / len(vals)) for r, vals in sorted(per_r.items())]
    return series


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")

_AXIS_LABELS = {
    "time": "reduce + cluster time (ms)",
    "objective": "normalized objective",
    "accuracy": "accuracy",
}


def _ticks(lo: float, hi: float, count: int = 5) -> list:
    if hi <= lo:
        hi = lo + 1.0
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def emit_plot(records: Sequence[BenchRecord], metric: str, path) -> None:
    """Render a standalone SVG line chart: one series per method, x = r,
    y = trial-averaged metric."""
    if not records:
        raise ValueError("cannot plot an empty record list")
    series = aggregate_series(records, metric)
    if not series:
        raise ValueError(f"no records carry the {metric!r} metric")

    width, height = 640.0, 440.0
    left, right, top, bottom = 70.0, 170.0, 40.0, 50.0
    plot_w = width - left - right
    plot_h = height - top - bottom

    xs = [r for pts in series.values() for r, _ in pts]
    ys = [v for pts in series.values() for _, v in pts]
    x_lo, x_hi = float(min(xs)), float(max(xs))
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 1.0, x_hi + 1.0
    y_lo = 0.0
    y_hi = max(ys) * 1.05 if max(ys) > 0 else 1.0

    def sx(x: float) -> float:
        return left + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y: float) -> float:
        return top + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:g}" height="{height:g}" viewBox="0 0 {width:g} {height:g}">',
        f'<rect width="{width:g}" height="{height:g}" fill="white"/>',
        f'<text x="{left + plot_w / 2:.2f}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{_AXIS_LABELS[metric]} vs r</text>',
    ]
    # axes
    parts.append(f'<line x1="{left:.2f}" y1="{top + plot_h:.2f}" x2="{left + plot_w:.2f}" '
                 f'y2="{top + plot_h:.2f}" stroke="black"/>')
    parts.append(f'<line x1="{left:.2f}" y1="{top:.2f}" x2="{left:.2f}" '
                 f'y2="{top + plot_h:.2f}" stroke="black"/>')
    for tx in _ticks(x_lo, x_hi):
        parts.append(f'<line x1="{sx(tx):.2f}" y1="{top + plot_h:.2f}" x2="{sx(tx):.2f}" '
                     f'y2="{top + plot_h + 5:.2f}" stroke="black"/>')
        parts.append(f'<text x="{sx(tx):.2f}" y="{top + plot_h + 18:.2f}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="11">{tx:.4g}</text>')
    for ty in _ticks(y_lo, y_hi):
        parts.append(f'<line x1="{left - 5:.2f}" y1="{sy(ty):.2f}" x2="{left:.2f}" '
                     f'y2="{sy(ty):.2f}" stroke="black"/>')
        parts.append(f'<text x="{left - 8:.2f}" y="{sy(ty) + 4:.2f}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="11">{ty:.4g}</text>')
    parts.append(f'<text x="{left + plot_w / 2:.2f}" y="{height - 10:.2f}" text-anchor="middle" '
                 f'font-family="sans-serif" font-size="12">r (number of features)</text>')

    for idx, (method, pts) in enumerate(series.items()):
        color = _PALETTE[idx % len(_PALETTE)]
        coords = " ".join(f"{sx(r):.2f},{sy(v):.2f}" for r, v in pts)
        parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        for r, v in pts:
            parts.append(f'<circle cx="{sx(r):.2f}" cy="{sy(v):.2f}" r="3" fill="{color}"/>')
        ly = top + 14 + 18 * idx
        lx = left + plot_w + 12
        parts.append(f'<line x1="{lx:.2f}" y1="{ly - 4:.2f}" x2="{lx + 20:.2f}" '
                     f'y2="{ly - 4:.2f}" stroke="{color}" stroke-width="1.5"/>')
        parts.append(f'<text x="{lx + 26:.2f}" y="{ly:.2f}" font-family="sans-serif" '
                     f'font-size="11">{method}</text>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")
