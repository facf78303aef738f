"""Cross-checks between the compiled kernels and the numpy fallback."""

import numpy as np
import pytest

from kmeans_sketch._backend import available_backends

BACKENDS = available_backends()

needs_compiled = pytest.mark.skipif(
    "compiled" not in BACKENDS, reason="compiled extension not built"
)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_jacobi_diagonalizes(name):
    kern = BACKENDS[name]
    rng = np.random.default_rng(0)
    s = rng.normal(size=(20, 20))
    s = np.ascontiguousarray(s + s.T)
    work = s.copy()
    vecs = np.eye(20)
    off, sweeps = kern.jacobi_sweeps(work, vecs, 1e-13 * np.linalg.norm(s), 60)
    assert off <= 1e-13 * np.linalg.norm(s)
    assert 1 <= sweeps <= 60
    recon = vecs @ work @ vecs.T
    assert np.linalg.norm(recon - s) <= 1e-10 * np.linalg.norm(s)


@needs_compiled
def test_jacobi_backends_agree():
    rng = np.random.default_rng(1)
    s = rng.normal(size=(15, 15))
    s = np.ascontiguousarray(s + s.T)
    results = {}
    for name, kern in BACKENDS.items():
        work = s.copy()
        vecs = np.eye(15)
        kern.jacobi_sweeps(work, vecs, 1e-13 * np.linalg.norm(s), 60)
        results[name] = np.sort(np.diag(work))
    assert np.allclose(results["compiled"], results["python"], atol=1e-10)


@needs_compiled
@pytest.mark.parametrize("n,w", [(1, 1), (7, 2), (64, 6), (100, 6), (257, 8)])
def test_sign_block_backends_agree(n, w):
    rng = np.random.default_rng(n)
    a = np.ascontiguousarray(rng.normal(size=(5, n)))
    codes = rng.integers(0, 1 << w, size=n).astype(np.int64)
    outs = [kern.sign_block_multiply(a, codes, w) for kern in BACKENDS.values()]
    assert outs[0].shape == (w, 5)
    assert np.allclose(outs[0], outs[1], atol=1e-10)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_sign_block_against_dense(name):
    kern = BACKENDS[name]
    rng = np.random.default_rng(3)
    n, w = 50, 4
    a = np.ascontiguousarray(rng.normal(size=(6, n)))
    codes = rng.integers(0, 1 << w, size=n).astype(np.int64)
    dense = np.empty((w, n))
    for b in range(w):
        dense[b] = 1.0 - 2.0 * ((codes >> b) & 1)
    assert np.allclose(kern.sign_block_multiply(a, codes, w), dense @ a.T, atol=1e-10)
