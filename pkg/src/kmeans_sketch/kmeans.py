"""Lloyd's k-means and the evaluation functionals used by the benchmark:
the clustering objective, its normalized form, and label accuracy under the
best cluster-to-label matching.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from ._rng import spawn
from .linalg import as_matrix

__all__ = [
    "ClusterAssignment",
    "KMeansConfig",
    "lloyd",
    "lloyd_single_run",
    "objective",
    "indicator_matrix",
    "normalized_objective",
    "accuracy",
]

INIT_METHODS = ("uniform-sample", "kmeanspp")


@dataclass(frozen=True)
class ClusterAssignment:
    """A k-clustering: per-point labels, cluster sizes, and centroids."""

    labels: np.ndarray
    k: int
    sizes: np.ndarray
    centroids: np.ndarray


@dataclass(frozen=True)
class KMeansConfig:
    k: int
    max_iters: int = 500
    replicates: int = 5
    seed: int = 0
    init: str = "uniform-sample"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.max_iters < 1 or self.replicates < 1:
            raise ValueError("max_iters and replicates must be at least 1")
        if self.init not in INIT_METHODS:
            raise ValueError(f"init must be one of {INIT_METHODS}, got {self.init!r}")


def _pairwise_sq(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    d2 = (
        np.sum(points * points, axis=1)[:, None]
        - 2.0 * (points @ centroids.T)
        + np.sum(centroids * centroids, axis=1)[None, :]
    )
    np.clip(d2, 0.0, None, out=d2)
    return d2


def _group_means(points: np.ndarray, labels: np.ndarray, k: int, sizes: np.ndarray) -> np.ndarray:
    sums = np.zeros((k, points.shape[1]))
    np.add.at(sums, labels, points)
    denom = np.where(sizes > 0, sizes, 1).astype(np.float64)
    return sums / denom[:, None]


def _repair_empty(labels: np.ndarray, sizes: np.ndarray, own_d2: np.ndarray, k: int):
    """Keep every cluster alive: the point farthest from its current centroid
    becomes the sole member of an empty cluster."""
    own_d2 = own_d2.copy()
    while True:
        empties = np.flatnonzero(sizes == 0)
        if empties.size == 0:
            return labels, sizes
        candidates = np.where(sizes[labels] > 1, own_d2, -1.0)
        worst = int(np.argmax(candidates))
        sizes[labels[worst]] -= 1
        labels[worst] = empties[0]
        sizes[empties[0]] = 1
        own_d2[worst] = 0.0


def _init_uniform(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    picks = rng.choice(points.shape[0], size=k, replace=False)
    return points[picks].copy()


def _init_kmeanspp(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    m = points.shape[0]
    centroids = np.empty((k, points.shape[1]))
    centroids[0] = points[int(rng.integers(m))]
    d2 = np.sum((points - centroids[0]) ** 2, axis=1)
    for j in range(1, k):
        total = float(d2.sum())
        if total == 0.0:
            idx = int(rng.integers(m))
        else:
            cum = np.cumsum(d2 / total)
            cum[-1] = 1.0
            idx = int(np.searchsorted(cum, rng.random(), side="right"))
        centroids[j] = points[idx]
        d2 = np.minimum(d2, np.sum((points - centroids[j]) ** 2, axis=1))
    return centroids


def lloyd_single_run(points, k: int, rng: np.random.Generator, max_iters: int = 500,
                     init: str = "uniform-sample"):
    """One Lloyd run.  Returns ``(assignment, history)`` where ``history``
    lists the objective after every iteration (non-increasing)."""
    points = as_matrix(points, "points")
    m = points.shape[0]
    if k > m:
        raise ValueError(f"k={k} exceeds the number of points {m}")
    if init == "kmeanspp":
        centroids = _init_kmeanspp(points, k, rng)
    else:
        centroids = _init_uniform(points, k, rng)
    labels_prev = None
    labels = np.zeros(m, dtype=np.int64)
    sizes = np.zeros(k, dtype=np.int64)
    history = []
    for _ in range(max_iters):
        d2 = _pairwise_sq(points, centroids)
        labels = np.argmin(d2, axis=1)  # ties go to the lowest index
        sizes = np.bincount(labels, minlength=k)
        labels, sizes = _repair_empty(labels, sizes, d2[np.arange(m), labels], k)
        centroids = _group_means(points, labels, k, sizes)
        history.append(float(np.sum((points - centroids[labels]) ** 2)))
        if labels_prev is not None and np.array_equal(labels, labels_prev):
            break
        labels_prev = labels
    return ClusterAssignment(labels=labels, k=k, sizes=sizes, centroids=centroids), history


def lloyd(points, cfg: KMeansConfig) -> ClusterAssignment:
    """Best assignment over ``cfg.replicates`` independent Lloyd runs.

    Replicates draw from split seed streams, so the result is deterministic
    for a fixed ``cfg.seed`` no matter how the runs are scheduled; ties in
    the objective keep the earliest replicate.
    """
    points = as_matrix(points, "points")
    best = None
    best_obj = np.inf
    for rep in range(cfg.replicates):
        asg, history = lloyd_single_run(
            points, cfg.k, spawn(cfg.seed, rep), cfg.max_iters, cfg.init
        )
        if history[-1] < best_obj:
            best, best_obj = asg, history[-1]
    return best


def objective(a, asg: ClusterAssignment) -> float:
    """Sum of squared distances of rows of ``a`` to their cluster's mean.

    The means are recomputed from ``a`` itself, so an assignment found on a
    reduced matrix can be scored against the original data.
    """
    a = as_matrix(a)
    labels = np.asarray(asg.labels)
    if a.shape[0] != labels.shape[0]:
        raise ValueError(
            f"matrix has {a.shape[0]} rows but assignment covers {labels.shape[0]} points"
        )
    sizes = np.bincount(labels, minlength=asg.k)
    means = _group_means(a, labels, asg.k, sizes)
    return float(np.sum((a - means[labels]) ** 2))


def indicator_matrix(asg: ClusterAssignment) -> np.ndarray:
    """The m-by-k normalized membership matrix X with one nonzero per row,
    ``X[i, j] = 1/sqrt(s_j)`` for point i in cluster j; satisfies
    ``X.T @ X = I``."""
    labels = np.asarray(asg.labels)
    sizes = np.bincount(labels, minlength=asg.k)
    if np.any(sizes == 0):
        raise ValueError("indicator matrix requires every cluster to be nonempty")
    x = np.zeros((labels.shape[0], asg.k))
    x[np.arange(labels.shape[0]), labels] = 1.0 / np.sqrt(sizes[labels])
    return x


def normalized_objective(a, asg: ClusterAssignment) -> float:
    """Objective divided by the squared Frobenius norm of the data; in [0, 1]."""
    a = as_matrix(a)
    total = float(np.sum(a * a))
    if total == 0.0:
        raise ValueError("normalized objective is undefined for a zero matrix")
    return objective(a, asg) / total


def accuracy(asg: ClusterAssignment, truth) -> float:
    """Fraction of points whose cluster maps to their true label under the
    best one-to-one cluster/label matching (Hungarian method on the
    contingency table)."""
    labels = np.asarray(asg.labels)
    truth = np.asarray(truth)
    if labels.shape[0] != truth.shape[0]:
        raise ValueError(
            f"assignment covers {labels.shape[0]} points but got {truth.shape[0]} labels"
        )
    _, truth_ids = np.unique(truth, return_inverse=True)
    contingency = np.zeros((asg.k, int(truth_ids.max()) + 1))
    np.add.at(contingency, (labels, truth_ids), 1.0)
    rows, cols = linear_sum_assignment(contingency, maximize=True)
    return float(contingency[rows, cols].sum()) / labels.shape[0]
