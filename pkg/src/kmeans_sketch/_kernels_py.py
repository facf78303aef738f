"""Numpy reference implementations of the hot kernels.

The compiled extension (``_kernels.pyx``) exposes the same two functions
with identical semantics; either module can back the public API.  Keep the
two in sync: the test suite cross-checks them when the extension is built.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"


def offdiag_norm(a: np.ndarray) -> float:
    """Frobenius norm of the off-diagonal part of a square matrix.

    Summed over the off-diagonal entries themselves; subtracting the
    diagonal mass from the total would cancel catastrophically once the
    matrix is nearly diagonal.
    """
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return math.sqrt(float(np.sum(off * off)))


def jacobi_sweeps(a: np.ndarray, v: np.ndarray, off_tol: float, max_sweeps: int):
    """Cyclic-by-row Jacobi diagonalization, in place.

    ``a`` is symmetric and is overwritten with an (approximately) diagonal
    matrix; plane rotations are accumulated into ``v`` (pass the identity),
    so on return ``a_in = v @ a_out @ v.T``.  Sweeps stop once the
    off-diagonal Frobenius norm drops below ``off_tol``.

    Returns ``(off_norm, sweeps_used)``.
    """
    n = a.shape[0]
    off = offdiag_norm(a)
    sweeps = 0
    while off > off_tol and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    # numerically zero already; rotating would overflow tau
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(tau) > 1e150:
                    t = 1.0 / (2.0 * tau)  # asymptotic form; tau*tau would overflow
                else:
                    t = 1.0 / (abs(tau) + math.sqrt(1.0 + tau * tau))
                    if tau < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        sweeps += 1
        off = offdiag_norm(a)
    return off, sweeps


def sign_block_multiply(a: np.ndarray, codes: np.ndarray, w: int) -> np.ndarray:
    """Multiply ``a`` by one width-``w`` block of an implicit sign matrix.

    ``codes[i]`` holds the w-bit column pattern of source index ``i``: bit b
    gives the sign of block row b (0 maps to +1, 1 maps to -1).  Returns the
    ``(w, m)`` block product ``signs @ a.T`` computed with one bucketing
    pass over the columns of ``a`` followed by an O(2^w) fold, instead of
    the O(n * w) dense inner product per row.
    """
    m = a.shape[0]
    size = 1 << w
    order = np.argsort(codes, kind="stable")
    sorted_codes = codes[order]
    starts = np.flatnonzero(np.r_[True, sorted_codes[1:] != sorted_codes[:-1]])
    sums = np.add.reduceat(a[:, order], starts, axis=1)
    buckets = np.zeros((size, m))
    buckets[sorted_codes[starts]] = sums.T
    out = np.empty((w, m))
    z = buckets
    for b in range(w):
        even = z[0::2]
        odd = z[1::2]
        out[b] = even.sum(axis=0) - odd.sum(axis=0)
        z = even + odd
    return out
