# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: cyclic Jacobi sweeps and mailman-style block
multiplication by an implicit sign matrix.

Semantics match ``_kernels_py`` exactly; see that module for the contract.
"""

from libc.math cimport fabs, sqrt

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"


def offdiag_norm(double[:, ::1] a):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j
    cdef double acc = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                acc += a[i, j] * a[i, j]
    return sqrt(acc)


def jacobi_sweeps(double[:, ::1] a, double[:, ::1] v, double off_tol, int max_sweeps):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, i
    cdef int sweeps = 0
    cdef double off, apq, tau, t, c, s, xp, xq
    off = offdiag_norm(a)
    while off > off_tol and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if fabs(apq) < 1e-300:
                    # numerically zero already; rotating would overflow tau
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if fabs(tau) > 1e150:
                    t = 1.0 / (2.0 * tau)  # asymptotic form; tau*tau would overflow
                else:
                    t = 1.0 / (fabs(tau) + sqrt(1.0 + tau * tau))
                    if tau < 0.0:
                        t = -t
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for i in range(n):
                    xp = a[p, i]
                    xq = a[q, i]
                    a[p, i] = c * xp - s * xq
                    a[q, i] = s * xp + c * xq
                for i in range(n):
                    xp = a[i, p]
                    xq = a[i, q]
                    a[i, p] = c * xp - s * xq
                    a[i, q] = s * xp + c * xq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for i in range(n):
                    xp = v[i, p]
                    xq = v[i, q]
                    v[i, p] = c * xp - s * xq
                    v[i, q] = s * xp + c * xq
        sweeps += 1
        off = offdiag_norm(a)
    return off, sweeps


def sign_block_multiply(double[:, ::1] a, long long[::1] codes, int w):
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t n = a.shape[1]
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << w
    cdef Py_ssize_t row, i, b, half
    cdef double acc
    out_arr = np.empty((w, m), dtype=np.float64)
    z_arr = np.empty(size, dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double[::1] z = z_arr
    for row in range(m):
        for i in range(size):
            z[i] = 0.0
        for i in range(n):
            z[codes[i]] += a[row, i]
        # Fold on the low bit: row b of the block is the signed sum with
        # sign taken from bit b of each code.
        half = size
        for b in range(w):
            half = half // 2
            acc = 0.0
            for i in range(half):
                acc += z[2 * i] - z[2 * i + 1]
                z[i] = z[2 * i] + z[2 * i + 1]
            out[b, row] = acc
    return out_arr
