"""Singular value decompositions: an exact solver built on a cyclic Jacobi
eigensolver, and a randomized approximation of the top right-singular
subspace with a relative-error Frobenius guarantee in expectation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from ._rng import gaussian, spawn
from .linalg import ConvergenceError, as_matrix, multiply, qr_orthonormalize

__all__ = [
    "SvdResult",
    "jacobi_eigh",
    "exact_svd",
    "top_k_right_singular",
    "sketch_width",
    "fast_frobenius_svd",
]

# Convergence thresholds for the Jacobi sweeps (relative to the input norm).
_JACOBI_OFF_TOL = 1e-13
_JACOBI_MAX_SWEEPS = 60


@dataclass(frozen=True)
class SvdResult:
    """Thin SVD: ``u @ diag(sigma) @ v.T`` reconstructs the input.

    ``u`` and ``v`` hold orthonormal columns; ``sigma`` is sorted descending
    and keeps only values above the numerical-rank cutoff, so ``len(sigma)``
    is the detected rank.
    """

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray

    @property
    def rank(self) -> int:
        return int(self.sigma.size)


def jacobi_eigh(s, max_sweeps: int = _JACOBI_MAX_SWEEPS):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues descending and
    eigenvector columns orthonormal.  Rejects input that is not symmetric to
    1e-12 relative; raises :class:`ConvergenceError` if the off-diagonal mass
    has not vanished after ``max_sweeps`` full sweeps.
    """
    s = as_matrix(s, "s")
    n, n2 = s.shape
    if n != n2:
        raise ValueError(f"matrix must be square, got {s.shape}")
    norm = math.sqrt(float(np.sum(s * s)))
    asym = math.sqrt(float(np.sum((s - s.T) ** 2)))
    if asym > 1e-12 * max(norm, 1e-300):
        raise ValueError("matrix is not symmetric")

    work = np.ascontiguousarray(s, dtype=np.float64).copy()
    vecs = np.eye(n)
    off_tol = _JACOBI_OFF_TOL * norm
    off, _ = _backend.active.jacobi_sweeps(work, vecs, off_tol, max_sweeps)
    if off > off_tol and norm > 0.0:
        raise ConvergenceError(
            f"Jacobi did not converge after {max_sweeps} sweeps", best_estimate=off
        )
    eigvals = np.diag(work).copy()
    order = np.argsort(-eigvals, kind="stable")
    return eigvals[order], vecs[:, order]


def _fix_signs(v: np.ndarray, other: np.ndarray) -> None:
    """Flip column pairs so each right-singular vector's first nonzero entry
    is positive; makes the factorization deterministic."""
    for j in range(v.shape[1]):
        col = v[:, j]
        nz = np.flatnonzero(np.abs(col) > 1e-12)
        lead = col[nz[0]] if nz.size else 0.0
        if lead < 0.0:
            v[:, j] = -col
            other[:, j] = -other[:, j]


def exact_svd(a) -> SvdResult:
    """Exact thin SVD via the Jacobi eigensolver on the smaller Gram matrix.

    The remaining factor is recovered by multiplication and normalization.
    Working through the Gram matrix squares the spectrum, so singular values
    below roughly sqrt(machine epsilon) of the largest cannot be resolved;
    the rank cutoff sits just above that floor.
    """
    a = as_matrix(a)
    m, n = a.shape
    if n <= m:
        eigvals, v = jacobi_eigh(a.T @ a)
    else:
        eigvals, u = jacobi_eigh(a @ a.T)
    sigma = np.sqrt(np.clip(eigvals, 0.0, None))
    if sigma.size == 0 or sigma[0] == 0.0:
        return SvdResult(np.zeros((m, 0)), np.zeros(0), np.zeros((n, 0)))
    cutoff = max(m, n) * math.sqrt(np.finfo(np.float64).eps) * sigma[0]
    rank = int(np.count_nonzero(sigma > cutoff))
    sigma = sigma[:rank]
    if n <= m:
        v = v[:, :rank]
        u = (a @ v) / sigma
        u /= np.linalg.norm(u, axis=0)
    else:
        u = u[:, :rank]
        v = (a.T @ u) / sigma
        v /= np.linalg.norm(v, axis=0)
    v = v.copy()
    u = u.copy()
    _fix_signs(v, u)
    return SvdResult(u, sigma, v)


def top_k_right_singular(a, k: int) -> np.ndarray:
    """Orthonormal basis for the top-k right singular subspace."""
    a = as_matrix(a)
    res = exact_svd(a)
    if not 1 <= k <= res.rank:
        raise ValueError(f"k={k} out of range for matrix of rank {res.rank}")
    return res.v[:, :k]


def sketch_width(k: int, epsilon: float) -> int:
    """Width of the Gaussian test matrix for the randomized factorization."""
    return k + math.ceil(k / epsilon + 1)


def fast_frobenius_svd(a, k: int, epsilon: float, seed: int) -> np.ndarray:
    """Randomized approximation Z of the top-k right singular vectors.

    Sketch ``Y = A R`` with a seeded Gaussian test matrix of width
    ``sketch_width(k, epsilon)``, orthonormalize Y, and return the top-k
    right singular vectors of the projected matrix ``Q.T A``.  The output
    ``Z`` (n-by-k) has orthonormal columns, the residual ``E = A - A Z Z.T``
    satisfies ``E Z = 0``, and ``E[norm(E)^2]`` over seeds is within a
    ``1 + epsilon`` factor of the best rank-k squared error.
    """
    a = as_matrix(a)
    m, n = a.shape
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    if k > min(m, n):
        raise ValueError(f"k={k} exceeds matrix dimensions {a.shape}")
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    r = min(sketch_width(k, epsilon), m)
    sketch = gaussian(spawn(seed), n, r)
    y = multiply(a, sketch)
    q = qr_orthonormalize(y)
    b = q.T @ a
    return top_k_right_singular(b, k)
