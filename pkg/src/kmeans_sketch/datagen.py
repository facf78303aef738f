"""Synthetic Gaussian-mixture data and CSV ingestion/persistence."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._rng import gaussian, spawn
from .linalg import as_matrix

__all__ = ["Dataset", "SynthSpec", "gen_synth", "load_csv", "save_csv"]


@dataclass(frozen=True)
class Dataset:
    """Points (one row each) with optional zero-based integer labels.

    ``k`` is the cluster count; 0 means unknown (e.g. an unlabeled CSV).
    """

    points: np.ndarray
    labels: Optional[np.ndarray]
    k: int = 0

    def __post_init__(self):
        if self.labels is not None:
            if len(self.labels) != self.points.shape[0]:
                raise ValueError("labels length must match the number of points")
            if self.k and (np.min(self.labels) < 0 or np.max(self.labels) >= self.k):
                raise ValueError(f"labels must lie in [0, {self.k})")


@dataclass(frozen=True)
class SynthSpec:
    """Well-separated Gaussian blobs: ``centers`` cluster centers drawn
    uniformly from the hypercube [0, side]^dim, with isotropic Gaussian
    points of the given variance around each."""

    centers: int
    dim: int
    points_per_center: int
    side: float = 2000.0
    variance: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.centers < 1 or self.dim < 1 or self.points_per_center < 1:
            raise ValueError("centers, dim and points_per_center must be at least 1")
        if self.side <= 0 or self.variance <= 0:
            raise ValueError("side and variance must be positive")


def gen_synth(spec: SynthSpec) -> Dataset:
    """Generate the mixture.  The centers themselves are not included in the
    data; labels record each point's source center, exactly
    ``points_per_center`` apiece."""
    rng = spawn(spec.seed)
    centers = rng.random((spec.centers, spec.dim)) * spec.side
    m = spec.centers * spec.points_per_center
    noise = gaussian(rng, m, spec.dim) * np.sqrt(spec.variance)
    points = np.repeat(centers, spec.points_per_center, axis=0) + noise
    labels = np.repeat(np.arange(spec.centers, dtype=np.int64), spec.points_per_center)
    return Dataset(points=points, labels=labels, k=spec.centers)


class CsvFormatError(ValueError):
    """A CSV row failed to parse; the message names the offending line."""


def load_csv(path, has_labels: bool = False) -> Dataset:
    """Read a rectangular numeric CSV; the final column becomes the labels
    when ``has_labels``."""
    rows = []
    labels = []
    width = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            cells = line.split(",")
            if width is None:
                width = len(cells)
                if has_labels and width < 2:
                    raise CsvFormatError(
                        f"{path}: line {lineno}: need at least 2 columns with labels"
                    )
            elif len(cells) != width:
                raise CsvFormatError(
                    f"{path}: line {lineno}: expected {width} fields, got {len(cells)}"
                )
            try:
                values = [float(c) for c in cells]
            except ValueError as exc:
                raise CsvFormatError(f"{path}: line {lineno}: {exc}") from None
            if has_labels:
                lab = values[-1]
                if lab != int(lab):
                    raise CsvFormatError(
                        f"{path}: line {lineno}: label {cells[-1]!r} is not an integer"
                    )
                labels.append(int(lab))
                values = values[:-1]
            rows.append(values)
    if not rows:
        raise CsvFormatError(f"{path}: file contains no data rows")
    points = as_matrix(np.array(rows), "points")
    if has_labels:
        labs = np.array(labels, dtype=np.int64)
        return Dataset(points=points, labels=labs, k=int(labs.max()) + 1)
    return Dataset(points=points, labels=None, k=0)


def save_csv(ds: Dataset, path, header: bool = False) -> None:
    """Write one row per point at 17 significant digits (value-exact for
    float64 round-trips); labels go in a final integer column."""
    points = as_matrix(ds.points, "points")
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            names = [f"x{j}" for j in range(points.shape[1])]
            if ds.labels is not None:
                names.append("label")
            fh.write(",".join(names) + "\n")
        for i in range(points.shape[0]):
            cells = [f"{v:.17g}" for v in points[i]]
            if ds.labels is not None:
                cells.append(str(int(ds.labels[i])))
            fh.write(",".join(cells) + "\n")
