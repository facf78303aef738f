"""The three dimensionality-reduction methods behind a uniform interface.

Feature selection keeps ``r`` rescaled actual columns of the data, chosen
by sampling against the squared row norms of an (exact or approximate)
top-k right-singular basis.  Feature extraction either projects onto a
random sign matrix or onto the top-k singular basis itself.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from ._rng import derive_seed
from .linalg import as_matrix
from .sketch import apply_sampling, mailman_multiply, random_sign_sketch, randomized_sampling
from .svd import fast_frobenius_svd, top_k_right_singular

__all__ = [
    "METHOD_KINDS",
    "ReductionMethod",
    "ReductionResult",
    "reduce_sampling",
    "reduce_rp",
    "reduce_svd",
    "run_reduction",
    "theory_r",
]

METHOD_KINDS = ("sampl-svd", "sampl-approx-svd", "rp", "svd", "approx-svd")

# Constants from the worst-case analysis of the sampling and projection
# methods.  They are acknowledged artifacts of the proofs; practical runs
# replace them with 1 and pick r directly.
PROOF_C1 = 16_000_000
PROOF_C2 = 3330 * 15**2


@dataclass(frozen=True)
class ReductionMethod:
    kind: str
    epsilon: float = 1.0 / 3.0

    def __post_init__(self):
        if self.kind not in METHOD_KINDS:
            raise ValueError(f"unknown reduction method {self.kind!r}")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must be in (0, 1), got {self.epsilon}")

    @property
    def is_selection(self) -> bool:
        return self.kind.startswith("sampl")

    @property
    def is_svd_family(self) -> bool:
        """These always produce exactly k features and ignore the r grid."""
        return self.kind in ("svd", "approx-svd")


@dataclass(frozen=True)
class ReductionResult:
    c: np.ndarray
    method: ReductionMethod
    r: int
    elapsed_ms: float
    seed: int


def reduce_sampling(a, k: int, r: int, exact: bool = False,
                    epsilon: float = 1.0 / 3.0, seed: int = 0) -> ReductionResult:
    """Select ``r`` rescaled columns of ``a`` (feature selection).

    The sampling probabilities come from the squared row norms of the
    top-k right-singular basis, computed exactly or by the randomized
    factorization (``epsilon`` controls only that internal sketch width).
    """
    a = as_matrix(a)
    start = time.perf_counter()
    if exact:
        z = top_k_right_singular(a, k)
    else:
        z = fast_frobenius_svd(a, k, epsilon, derive_seed(seed, 0))
    plan = randomized_sampling(z, r, derive_seed(seed, 1))
    c = apply_sampling(a, plan)
    elapsed = (time.perf_counter() - start) * 1000.0
    kind = "sampl-svd" if exact else "sampl-approx-svd"
    return ReductionResult(c, ReductionMethod(kind, epsilon), r, elapsed, seed)


def reduce_rp(a, k: int, r: int, seed: int = 0) -> ReductionResult:
    """Project onto a random sign matrix: ``C = A R / sqrt(r)`` (m by r)."""
    a = as_matrix(a)
    start = time.perf_counter()
    sk = random_sign_sketch(a.shape[1], r, seed)
    c = mailman_multiply(a, sk)
    elapsed = (time.perf_counter() - start) * 1000.0
    return ReductionResult(c, ReductionMethod("rp"), r, elapsed, seed)


def reduce_svd(a, k: int, exact: bool = False,
               epsilon: float = 1.0 / 3.0, seed: int = 0) -> ReductionResult:
    """Project onto the (exact or approximate) top-k right-singular basis:
    ``C = A Z`` with k columns."""
    a = as_matrix(a)
    start = time.perf_counter()
    if exact:
        z = top_k_right_singular(a, k)
    else:
        z = fast_frobenius_svd(a, k, epsilon, derive_seed(seed, 0))
    c = a @ z
    elapsed = (time.perf_counter() - start) * 1000.0
    kind = "svd" if exact else "approx-svd"
    return ReductionResult(c, ReductionMethod(kind, epsilon), k, elapsed, seed)


def run_reduction(a, k: int, method: ReductionMethod, r: int, seed: int = 0) -> ReductionResult:
    """Dispatch a reduction by method kind (``r`` is ignored by the SVD family)."""
    if method.kind == "sampl-svd":
        return reduce_sampling(a, k, r, exact=True, epsilon=method.epsilon, seed=seed)
    if method.kind == "sampl-approx-svd":
        return reduce_sampling(a, k, r, exact=False, epsilon=method.epsilon, seed=seed)
    if method.kind == "rp":
        return reduce_rp(a, k, r, seed=seed)
    if method.kind == "svd":
        return reduce_svd(a, k, exact=True, epsilon=method.epsilon, seed=seed)
    return reduce_svd(a, k, exact=False, epsilon=method.epsilon, seed=seed)


def theory_r(method: ReductionMethod, k: int, epsilon: float,
             use_proof_constants: bool = False) -> int:
    """Feature count suggested by the worst-case analysis.

    Selection needs ``c1 * 4 k ln(200 k) / eps^2`` columns and sign
    projection needs ``c2 * k / eps^2``; with ``use_proof_constants`` unset
    the constants are replaced by 1, since practical accuracy is reached at
    far smaller r.  SVD-family methods always use exactly k features.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    if method.is_svd_family:
        return k
    if method.is_selection:
        c1 = PROOF_C1 if use_proof_constants else 1
        return math.ceil(c1 * 4.0 * k * math.log(200.0 * k) / epsilon**2)
    c2 = PROOF_C2 if use_proof_constants else 1
    return math.ceil(c2 * k / epsilon**2)
