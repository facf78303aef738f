"""Randomized sketching primitives.

Two families: column sampling with replacement (probabilities proportional
to squared row norms of a probe matrix, with 1/sqrt(r*p) rescaling), and
random sign projection stored in a compact block encoding so the product
``A @ R`` can be computed blockwise in O(m n ceil(r / log2 n)) instead of
O(m n r).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from ._rng import spawn
from .linalg import as_matrix, multiply

__all__ = [
    "SamplingPlan",
    "SignSketch",
    "sampling_probabilities",
    "randomized_sampling",
    "apply_sampling",
    "random_sign_sketch",
    "expand_signs",
    "mailman_multiply",
    "naive_sign_multiply",
]

# Row probabilities below this are treated as exactly zero so the rescaling
# weights cannot overflow.
_PROB_FLOOR = 1e-300


@dataclass(frozen=True)
class SamplingPlan:
    """Sampled column indices with rescaling weights.

    ``weights[t] == 1 / sqrt(r * probabilities[indices[t]])`` by
    construction; applying the plan to a matrix keeps ``r`` rescaled actual
    columns of it.
    """

    source_dim: int
    indices: np.ndarray
    weights: np.ndarray
    probabilities: np.ndarray

    @property
    def r(self) -> int:
        return int(self.indices.size)


@dataclass(frozen=True)
class SignSketch:
    """Implicit n-by-r rescaled sign matrix in block-code form.

    Each block assigns every source index a ``block_width``-bit pattern;
    bit b of the pattern is the sign of sketch column ``block*width + b``
    (0 is +1, 1 is -1).  The last block may have fewer than ``block_width``
    live columns; surplus columns are simply unused.
    """

    source_dim: int
    target_dim: int
    block_width: int
    blocks: tuple = field(repr=False)
    scale: float

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)


def sampling_probabilities(z) -> np.ndarray:
    """Per-row probabilities: squared row norm over squared Frobenius norm."""
    z = as_matrix(z, "z")
    row_sq = np.sum(z * z, axis=1)
    total = float(row_sq.sum())
    if total == 0.0:
        raise ValueError("cannot derive sampling probabilities from an all-zero matrix")
    probs = row_sq / total
    probs[probs < _PROB_FLOOR] = 0.0
    return probs


def randomized_sampling(z, r: int, seed: int) -> SamplingPlan:
    """Draw ``r`` row indices i.i.d. with replacement from the squared-row-norm
    distribution of ``z`` and attach 1/sqrt(r*p) rescaling weights.

    Draws use inverse-CDF search over the cumulative probability array.
    """
    if r < 1:
        raise ValueError(f"r must be at least 1, got {r}")
    z = as_matrix(z, "z")
    probs = sampling_probabilities(z)
    support = np.flatnonzero(probs > 0.0)
    cum = np.cumsum(probs[support])
    cum[-1] = 1.0  # guard against cumulative rounding at the top edge
    rng = spawn(seed)
    u = rng.random(r)
    indices = support[np.searchsorted(cum, u, side="right")]
    weights = 1.0 / np.sqrt(r * probs[indices])
    return SamplingPlan(
        source_dim=z.shape[0],
        indices=indices.astype(np.int64),
        weights=weights,
        probabilities=probs,
    )


def apply_sampling(a, plan: SamplingPlan) -> np.ndarray:
    """Keep the plan's columns of ``a``, rescaled: column t is
    ``weights[t] * a[:, indices[t]]``."""
    a = as_matrix(a)
    if a.shape[1] != plan.source_dim:
        raise ValueError(
            f"matrix has {a.shape[1]} columns but plan was built for {plan.source_dim}"
        )
    return a[:, plan.indices] * plan.weights


def _block_width(n: int) -> int:
    return max(1, n.bit_length() - 1)


def random_sign_sketch(n: int, r: int, seed: int) -> SignSketch:
    """Sample an implicit n-by-r sign matrix with i.i.d. +-1 entries.

    Entries are realized by giving every source index an independent
    uniform w-bit code per block, which makes each implied entry an
    independent fair sign.
    """
    if n < 1 or r < 1:
        raise ValueError(f"need n >= 1 and r >= 1, got n={n}, r={r}")
    w = _block_width(n)
    num_blocks = -(-r // w)
    rng = spawn(seed)
    blocks = tuple(
        rng.integers(0, 1 << w, size=n, dtype=np.int64) for _ in range(num_blocks)
    )
    return SignSketch(
        source_dim=n,
        target_dim=r,
        block_width=w,
        blocks=blocks,
        scale=1.0 / math.sqrt(r),
    )


def expand_signs(sk: SignSketch) -> np.ndarray:
    """Dense unscaled +-1 expansion of the sketch (n by r)."""
    cols = np.empty((sk.source_dim, sk.target_dim))
    for b, codes in enumerate(sk.blocks):
        live = min(sk.block_width, sk.target_dim - b * sk.block_width)
        for j in range(live):
            bits = (codes >> j) & 1
            cols[:, b * sk.block_width + j] = 1.0 - 2.0 * bits
    return cols


def mailman_multiply(a, sk: SignSketch) -> np.ndarray:
    """Compute ``a @ R * scale`` blockwise.

    Each block costs one O(n) bucketing pass per row plus an O(2^w) fold,
    with w the block width, instead of the O(n * w) dense inner products.
    """
    a = as_matrix(a)
    if a.shape[1] != sk.source_dim:
        raise ValueError(
            f"matrix has {a.shape[1]} columns but sketch was built for {sk.source_dim}"
        )
    a = np.ascontiguousarray(a)
    m = a.shape[0]
    out = np.empty((m, sk.target_dim))
    w = sk.block_width
    for b, codes in enumerate(sk.blocks):
        block = _backend.active.sign_block_multiply(
            a, np.ascontiguousarray(codes), w
        )
        live = min(w, sk.target_dim - b * w)
        out[:, b * w : b * w + live] = block[:live].T
    out *= sk.scale
    return out


def naive_sign_multiply(a, sk: SignSketch) -> np.ndarray:
    """Reference semantics for :func:`mailman_multiply`: densify and multiply."""
    return multiply(a, expand_signs(sk)) * sk.scale
