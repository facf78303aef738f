"""Seeded randomness shared by every stochastic routine in the package.

All randomness flows through PCG64 generators built from explicit integer
seeds.  Child streams are derived by seed-splitting: the entropy fed to the
seed sequence is the tuple ``(seed, *stream)``, so parallel trials with
distinct stream indices are independent and reproducible regardless of
execution order.
"""

from __future__ import annotations

import numpy as np

__all__ = ["spawn", "derive_seed", "gaussian"]


def spawn(seed: int, *stream: int) -> np.random.Generator:
    """Return a PCG64 generator for the stream ``(seed, *stream)``."""
    entropy = (int(seed),) + tuple(int(s) for s in stream)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def derive_seed(seed: int, *stream: int) -> int:
    """Collapse ``(seed, *stream)`` into a single reportable 63-bit seed."""
    entropy = (int(seed),) + tuple(int(s) for s in stream)
    state = np.random.SeedSequence(entropy).generate_state(1, np.uint64)[0]
    return int(state >> np.uint64(1))


def gaussian(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Draw an i.i.d. standard-normal matrix via Box-Muller.

    Built on top of the generator's uniforms rather than its native normal
    sampler so the draw sequence is pinned by this code alone.
    """
    count = rows * cols
    pairs = (count + 1) // 2
    # 1 - U keeps the argument of the log in (0, 1].
    u1 = 1.0 - rng.random(pairs)
    u2 = rng.random(pairs)
    radius = np.sqrt(-2.0 * np.log(u1))
    theta = 2.0 * np.pi * u2
    z = np.concatenate([radius * np.cos(theta), radius * np.sin(theta)])
    return z[:count].reshape(rows, cols)
