"""Dense matrix primitives used throughout the package.

A "matrix" is a 2-D float64 numpy array with finite entries; helpers here
validate that contract and provide the handful of factorizations the
reduction algorithms need.  Everything is a pure function of its inputs.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "ConvergenceError",
    "as_matrix",
    "multiply",
    "frobenius_norm",
    "spectral_norm",
    "qr_orthonormalize",
    "pseudo_inverse",
]


class ConvergenceError(RuntimeError):
    """An iterative routine ran out of iterations.

    ``best_estimate`` carries the last iterate so callers can still inspect
    how far the computation got.
    """

    def __init__(self, message: str, best_estimate: float):
        super().__init__(message)
        self.best_estimate = best_estimate


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate and return ``a`` as a 2-D float64 array with finite entries."""
    out = np.asarray(a, dtype=np.float64)
    if out.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {out.shape}")
    if out.shape[0] < 1 or out.shape[1] < 1:
        raise ValueError(f"{name} must have positive dimensions, got {out.shape}")
    if not np.all(np.isfinite(out)):
        raise ValueError(f"{name} contains non-finite entries")
    return out


def multiply(a, b) -> np.ndarray:
    """Matrix product with shape validation."""
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def frobenius_norm(a) -> float:
    a = as_matrix(a)
    return math.sqrt(float(np.sum(a * a)))


def spectral_norm(a, tol: float = 1e-10, max_iters: int = 10000) -> float:
    """Largest singular value via power iteration on the smaller Gram matrix.

    The start vector is all ones, so repeated calls are deterministic.
    Raises :class:`ConvergenceError` (carrying the best estimate) if the
    iteration has not stabilized to relative accuracy ``tol`` within
    ``max_iters`` steps.
    """
    a = as_matrix(a)
    if tol <= 0:
        raise ValueError("tol must be positive")
    m, n = a.shape
    if n <= m:
        gram = a.T @ a
    else:
        gram = a @ a.T
    size = gram.shape[0]
    x = np.ones(size) / math.sqrt(size)
    lam = 0.0
    for _ in range(max_iters):
        y = gram @ x
        norm_y = float(np.linalg.norm(y))
        if norm_y == 0.0:
            return 0.0
        x = y / norm_y
        if abs(norm_y - lam) <= tol * norm_y:
            return math.sqrt(norm_y)
        lam = norm_y
    raise ConvergenceError(
        f"power iteration did not converge in {max_iters} iterations",
        best_estimate=math.sqrt(lam),
    )


def qr_orthonormalize(y) -> np.ndarray:
    """Orthonormal basis (Householder QR) for the column space of ``y``.

    Output has the same width as ``y``; for rank-deficient input the extra
    columns are still orthonormal, so downstream code can rely on a
    full-width Q with span(Q) containing span(y).
    """
    y = as_matrix(y, "y")
    if y.shape[0] < y.shape[1]:
        raise ValueError(f"need rows >= cols to orthonormalize, got {y.shape}")
    q, _ = np.linalg.qr(y, mode="reduced")
    return q


def pseudo_inverse(a, rank_tol: float = 1e-12) -> np.ndarray:
    """Moore-Penrose pseudo-inverse via SVD.

    Singular values below ``rank_tol`` times the largest one are treated as
    exactly zero.
    """
    a = as_matrix(a)
    if rank_tol <= 0:
        raise ValueError("rank_tol must be positive")
    u, sigma, vt = np.linalg.svd(a, full_matrices=False)
    if sigma.size == 0 or sigma[0] == 0.0:
        return np.zeros((a.shape[1], a.shape[0]))
    keep = sigma > rank_tol * sigma[0]
    inv = np.zeros_like(sigma)
    inv[keep] = 1.0 / sigma[keep]
    return (vt.T * inv) @ u.T
