"""Empirical checkers for the concentration and identity results that back
the reduction methods.  Each suite draws many seeded trials at desk-scale
sizes and compares the observed pass fraction (or sample mean) against a
threshold with documented slack; the slack covers the gap between a bound
on an expectation or probability and a finite sample of it.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from ._rng import derive_seed, gaussian, spawn
from .linalg import frobenius_norm, pseudo_inverse, qr_orthonormalize
from .sketch import (
    apply_sampling,
    mailman_multiply,
    naive_sign_multiply,
    random_sign_sketch,
    randomized_sampling,
    sampling_probabilities,
)
from .svd import exact_svd, fast_frobenius_svd

__all__ = ["VerifyReport", "SUITE_NAMES", "verify_suite", "report_to_json"]


@dataclass(frozen=True)
class VerifyReport:
    suite: str
    trials: int
    pass_fraction: float
    threshold: float
    passed: bool
    details: str


def report_to_json(report: VerifyReport) -> str:
    return json.dumps(asdict(report))


def _spectrum_matrix(rng: np.random.Generator, m: int, n: int, sigma: np.ndarray) -> np.ndarray:
    """Random matrix with prescribed singular values."""
    u = qr_orthonormalize(gaussian(rng, m, sigma.size))
    v = qr_orthonormalize(gaussian(rng, n, sigma.size))
    return (u * sigma) @ v.T


def _suite_pythagoras(seed: int, trials: int) -> VerifyReport:
    """|X+Y|^2 = |X|^2 + |Y|^2 whenever X Y^T = 0; Y is built by projecting a
    second random matrix onto the orthogonal complement of X's row space."""
    ok = 0
    for t in range(trials):
        rng = spawn(seed, t)
        x = gaussian(rng, 12, 20)
        other = gaussian(rng, 12, 20)
        y = other @ (np.eye(20) - pseudo_inverse(x) @ x)
        lhs = frobenius_norm(x + y) ** 2
        sq = frobenius_norm(x) ** 2 + frobenius_norm(y) ** 2
        if abs(lhs - sq) <= 1e-10 * sq:
            ok += 1
    frac = ok / trials
    return VerifyReport("pythagoras", trials, frac, 1.0, frac >= 1.0,
                        "orthogonal-pair norm identity, relative slack 1e-10")


def _suite_lemma4(seed: int, trials: int) -> VerifyReport:
    """Sampling r = ceil(4 k ln(2k/delta)/eps^2) rows of an orthonormal V
    (500x5, eps=0.5, delta=0.1) keeps all squared singular values of
    V^T Omega S inside [1-eps, 1+eps] in at least 90% of trials."""
    k, n, eps, delta = 5, 500, 0.5, 0.1
    r = math.ceil(4 * k * math.log(2 * k / delta) / eps**2)
    ok = 0
    for t in range(trials):
        rng = spawn(seed, t)
        v = qr_orthonormalize(gaussian(rng, n, k))
        plan = randomized_sampling(v, r, derive_seed(seed, t, 1))
        sig = exact_svd(apply_sampling(v.T, plan)).sigma
        if sig.size == k and np.all((sig**2 >= 1 - eps) & (sig**2 <= 1 + eps)):
            ok += 1
    frac = ok / trials
    return VerifyReport("lemma4", trials, frac, 0.90, frac >= 0.90,
                        f"singular-value concentration at r={r}")


def _suite_lemma5(seed: int, trials: int) -> VerifyReport:
    """E|Y Omega S|^2 = |Y|^2 for any probability source: the sample mean
    over the trials must land within 5% of |Y|^2.  Probabilities come from
    an unrelated random matrix."""
    rng = spawn(seed, 0)
    y = gaussian(rng, 200, 300)
    z = gaussian(rng, 300, 4)
    target = frobenius_norm(y) ** 2
    r = 300
    total = 0.0
    for t in range(trials):
        plan = randomized_sampling(z, r, derive_seed(seed, t, 1))
        total += frobenius_norm(apply_sampling(y, plan)) ** 2
    ratio = total / trials / target
    frac = 1.0 - abs(ratio - 1.0)
    return VerifyReport("lemma5", trials, frac, 0.95, frac >= 0.95,
                        f"mean norm ratio {ratio:.5f} (want within 5% of 1)")


def _suite_lemma6(seed: int, trials: int) -> VerifyReport:
    """Switching from the rank-k factor A Z Z^T to the sampled reconstruction
    A Omega S (Z^T Omega S)^+ Z^T leaves a residual of norm at most
    (1.6 eps / sqrt(delta)) |E| in at least 1 - 3 delta - 0.05 of trials,
    at r = ceil(4 k ln(2k/delta)/eps^2)."""
    k, eps, delta = 3, 1.0 / 3.0, 0.1
    m, n = 100, 500
    r = math.ceil(4 * k * math.log(2 * k / delta) / eps**2)
    bound_factor = 1.6 * eps / math.sqrt(delta)
    a = gaussian(spawn(seed, 0), m, n)
    ok = 0
    for t in range(trials):
        z = fast_frobenius_svd(a, k, eps, derive_seed(seed, t, 1))
        low_rank = a @ z @ z.T
        e_norm = frobenius_norm(a - low_rank)
        plan = randomized_sampling(z, r, derive_seed(seed, t, 2))
        sampled = apply_sampling(a, plan) @ pseudo_inverse(apply_sampling(z.T, plan)) @ z.T
        if frobenius_norm(low_rank - sampled) <= bound_factor * e_norm:
            ok += 1
    frac = ok / trials
    threshold = 1.0 - 3 * delta - 0.05
    return VerifyReport("lemma6", trials, frac, threshold, frac >= threshold,
                        f"sampled rank-k switch residual at r={r}")


def _suite_lemma7(seed: int, trials: int) -> VerifyReport:
    """With r = 100 k / eps^2 sign-projection columns, |Y R|^2 exceeds
    (1+eps)|Y|^2 in at most 5% of trials (the bound puts 1% on this)."""
    k, eps = 2, 0.5
    r = int(100 * k / eps**2)
    y = gaussian(spawn(seed, 0), 40, 120)
    target = (1 + eps) * frobenius_norm(y) ** 2
    violations = 0
    for t in range(trials):
        sk = random_sign_sketch(120, r, derive_seed(seed, t, 1))
        if frobenius_norm(mailman_multiply(y, sk)) ** 2 > target:
            violations += 1
    frac = 1.0 - violations / trials
    return VerifyReport("lemma7", trials, frac, 0.95, frac >= 0.95,
                        f"{violations} norm-inflation violations at r={r}")


def _suite_lemma8(seed: int, trials: int) -> VerifyReport:
    """Sign projection preserves the best rank-k factor: the residual
    A_k - A R (V_k^T R)^+ V_k^T has norm at most 3 eps |A - A_k| in at
    least 92% of trials.  Desk-scaled r (the analysis constant 3330 is far
    beyond what concentration needs at these sizes)."""
    k, eps = 3, 1.0 / 3.0
    m, n = 80, 400
    r = math.ceil(30 * k / eps**2)
    rng = spawn(seed, 0)
    sigma = 1.0 / np.arange(1, 61)
    a = _spectrum_matrix(rng, m, n, sigma)
    res = exact_svd(a)
    vk = res.v[:, :k]
    a_k = (res.u[:, :k] * res.sigma[:k]) @ vk.T
    tail = frobenius_norm(a - a_k)
    ok = 0
    for t in range(trials):
        sk = random_sign_sketch(n, r, derive_seed(seed, t, 1))
        ar = mailman_multiply(a, sk)
        vkr = mailman_multiply(vk.T, sk)
        recon = ar @ pseudo_inverse(vkr) @ vk.T
        if frobenius_norm(a_k - recon) <= 3 * eps * tail:
            ok += 1
    frac = ok / trials
    return VerifyReport("lemma8", trials, frac, 0.92, frac >= 0.92,
                        f"projected rank-k switch residual at r={r}")


def _suite_lemma9(seed: int, trials: int) -> VerifyReport:
    """Whenever the squared singular values of Q^T Theta sit in [1-e, 1+e]
    with e < 1/3, the gap between pseudo-inverse and transpose is at most
    1.5 e in spectral norm.  Deterministic given the premise."""
    n, k, r = 200, 4, 250
    ok = 0
    vacuous = 0
    for t in range(trials):
        rng = spawn(seed, t)
        q = qr_orthonormalize(gaussian(rng, n, k))
        theta = gaussian(rng, n, r) / math.sqrt(r)
        x = q.T @ theta
        sig = exact_svd(x).sigma
        if sig.size < k:
            vacuous += 1
            continue
        measured_eps = float(np.max(np.abs(sig**2 - 1.0)))
        if measured_eps >= 1.0 / 3.0:
            vacuous += 1
            continue
        gap = exact_svd(pseudo_inverse(x) - x.T).sigma[0]
        if gap <= 1.5 * measured_eps:
            ok += 1
    effective = trials - vacuous
    frac = ok / effective if effective else 1.0
    return VerifyReport("lemma9", trials, frac, 1.0, frac >= 1.0,
                        f"{vacuous} trials skipped (premise not met)")


def _suite_rsvd(seed: int, trials: int) -> VerifyReport:
    """Randomized factorization quality on a 100x80 matrix with singular
    values 1/i, k=5, eps=1/3: the sample mean of |A - A Z Z^T|^2 stays
    within 5% slack of (1+eps) |A - A_k|^2, and at most 5% of trials exceed
    the (1+100 eps) tail bound."""
    k, eps = 5, 1.0 / 3.0
    m, n = 100, 80
    sigma = 1.0 / np.arange(1, n + 1)
    a = _spectrum_matrix(spawn(seed, 0), m, n, sigma)
    sig_exact = exact_svd(a).sigma
    tail = float(np.sum(sig_exact[k:] ** 2))
    errs = np.empty(trials)
    for t in range(trials):
        z = fast_frobenius_svd(a, k, eps, derive_seed(seed, t, 1))
        errs[t] = frobenius_norm(a - a @ z @ z.T) ** 2
    mean_ok = errs.mean() <= 1.05 * (1 + eps) * tail
    markov_frac = float(np.mean(errs <= (1 + 100 * eps) * tail))
    passed = bool(mean_ok and markov_frac >= 0.95)
    return VerifyReport("rsvd", trials, markov_frac, 0.95, passed,
                        f"mean ratio {errs.mean() / ((1 + eps) * tail):.4f} "
                        f"(want <= 1.05), tail-bound fraction {markov_frac:.3f}")


def _suite_mailman(seed: int, trials: int) -> VerifyReport:
    """Blockwise sign multiplication agrees with the dense expansion to
    1e-10 entrywise, across shapes including n not a power of two and
    r below the block width."""
    ok = 0
    for t in range(trials):
        rng = spawn(seed, t)
        n = int(rng.integers(1, 400))
        m = int(rng.integers(1, 24))
        r = int(rng.integers(1, 80))
        a = gaussian(rng, m, n)
        sk = random_sign_sketch(n, r, derive_seed(seed, t, 1))
        diff = np.max(np.abs(mailman_multiply(a, sk) - naive_sign_multiply(a, sk)))
        if diff <= 1e-10:
            ok += 1
    frac = ok / trials
    return VerifyReport("mailman", trials, frac, 1.0, frac >= 1.0,
                        "blockwise vs dense sign multiply, 1e-10 entrywise")


def _suite_jl(seed: int, trials: int) -> VerifyReport:
    """Pairwise squared distances of a random point set survive a sign
    projection to r = ceil(36 ln(m) ln(100) / eps^2) dimensions within
    1 +- eps, in at least 95% of trials."""
    m, n, eps = 20, 128, 0.5
    r = math.ceil(36 * math.log(m) * math.log(100) / eps**2)
    ok = 0
    for t in range(trials):
        rng = spawn(seed, t)
        a = gaussian(rng, m, n)
        c = mailman_multiply(a, random_sign_sketch(n, r, derive_seed(seed, t, 1)))
        good = True
        for i in range(m):
            orig = np.sum((a[i] - a[i + 1:]) ** 2, axis=1)
            proj = np.sum((c[i] - c[i + 1:]) ** 2, axis=1)
            if np.any(proj > (1 + eps) * orig) or np.any(proj < (1 - eps) * orig):
                good = False
                break
        if good:
            ok += 1
    frac = ok / trials
    return VerifyReport("jl", trials, frac, 0.95, frac >= 0.95,
                        f"pairwise distance preservation at r={r}")


_SUITES = {
    "pythagoras": (_suite_pythagoras, 100),
    "lemma4": (_suite_lemma4, 100),
    "lemma5": (_suite_lemma5, 1000),
    "lemma6": (_suite_lemma6, 100),
    "lemma7": (_suite_lemma7, 1000),
    "lemma8": (_suite_lemma8, 100),
    "lemma9": (_suite_lemma9, 200),
    "rsvd": (_suite_rsvd, 200),
    "mailman": (_suite_mailman, 100),
    "jl": (_suite_jl, 100),
}

SUITE_NAMES = tuple(_SUITES)


def verify_suite(name: str, seed: int = 0, trials: int | None = None) -> VerifyReport:
    """Run one named suite; ``trials`` overrides the suite's default count."""
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITE_NAMES}")
    func, default_trials = _SUITES[name]
    count = default_trials if trials is None else int(trials)
    if count < 1:
        raise ValueError("trials must be at least 1")
    return func(seed, count)
