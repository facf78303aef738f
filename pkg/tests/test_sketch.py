import math

import numpy as np
import pytest

from kmeans_sketch.sketch import (
    SignSketch,
    apply_sampling,
    expand_signs,
    mailman_multiply,
    naive_sign_multiply,
    random_sign_sketch,
    randomized_sampling,
    sampling_probabilities,
)


class TestSamplingProbabilities:
    def test_equal_nonzero_rows(self):
        z = np.vstack([np.eye(2), np.zeros((2, 2))])
        assert np.allclose(sampling_probabilities(z), [0.5, 0.5, 0.0, 0.0])

    def test_forced_by_row_norms(self):
        z = np.array([[1.0, 0.0], [0.0, 2.0]])
        assert np.allclose(sampling_probabilities(z), [0.2, 0.8])

    def test_per_row_oracle(self):
        rng = np.random.default_rng(0)
        z = rng.normal(size=(30, 4))
        p = sampling_probabilities(z)
        assert p.sum() == pytest.approx(1.0, abs=1e-12)
        total = np.sum(z * z)
        for i in range(30):
            assert p[i] == pytest.approx(np.sum(z[i] ** 2) / total, rel=1e-12)

    def test_zero_matrix_rejected(self):
        with pytest.raises(ValueError):
            sampling_probabilities(np.zeros((3, 2)))


class TestRandomizedSampling:
    def test_degenerate_distribution(self):
        z = np.zeros((5, 3))
        z[2] = [1.0, 2.0, 3.0]
        plan = randomized_sampling(z, 8, seed=4)
        assert np.all(plan.indices == 2)
        assert np.allclose(plan.weights, 1.0 / math.sqrt(8))

    def test_deterministic_for_seed(self):
        rng = np.random.default_rng(1)
        z = rng.normal(size=(40, 3))
        p1 = randomized_sampling(z, 25, seed=9)
        p2 = randomized_sampling(z, 25, seed=9)
        assert np.array_equal(p1.indices, p2.indices)
        assert np.array_equal(p1.weights, p2.weights)

    def test_uniform_frequencies_within_3_sigma(self):
        n, r = 16, 10000
        z = np.ones((n, 2))
        plan = randomized_sampling(z, r, seed=7)
        counts = np.bincount(plan.indices, minlength=n)
        p = 1.0 / n
        sigma = math.sqrt(r * p * (1 - p))
        assert np.all(np.abs(counts - r * p) <= 3 * sigma)

    def test_weight_formula(self):
        rng = np.random.default_rng(2)
        z = rng.normal(size=(20, 4))
        plan = randomized_sampling(z, 50, seed=3)
        expected = 1.0 / np.sqrt(50 * plan.probabilities[plan.indices])
        assert np.allclose(plan.weights, expected, atol=1e-12)

    def test_zero_rows_never_sampled(self):
        z = np.zeros((6, 2))
        z[0, 0] = 1.0
        z[5, 1] = 1.0
        plan = randomized_sampling(z, 2000, seed=11)
        assert set(np.unique(plan.indices)) <= {0, 5}

    def test_r_validation(self):
        with pytest.raises(ValueError):
            randomized_sampling(np.eye(3), 0, seed=0)


class TestApplySampling:
    def test_single_pick(self):
        rng = np.random.default_rng(3)
        a = rng.normal(size=(4, 6))
        z = np.zeros((6, 2))
        z[0] = 1.0
        plan = randomized_sampling(z, 1, seed=0)
        assert np.all(plan.indices == 0)
        c = apply_sampling(a, plan)
        # weight is 1/sqrt(1 * 1) = 1 for a point-mass distribution
        assert np.allclose(c[:, 0], a[:, 0])

    def test_linearity_in_weights(self):
        rng = np.random.default_rng(4)
        a = rng.normal(size=(5, 8))
        plan = randomized_sampling(rng.normal(size=(8, 3)), 6, seed=1)
        doubled = type(plan)(
            source_dim=plan.source_dim,
            indices=plan.indices,
            weights=plan.weights * 2.0,
            probabilities=plan.probabilities,
        )
        assert np.allclose(apply_sampling(a, doubled), 2.0 * apply_sampling(a, plan))

    def test_matches_dense_sampling_matrices(self):
        rng = np.random.default_rng(5)
        a = rng.normal(size=(7, 12))
        plan = randomized_sampling(rng.normal(size=(12, 4)), 9, seed=2)
        omega = np.zeros((12, 9))
        s = np.zeros((9, 9))
        for t in range(9):
            omega[plan.indices[t], t] = 1.0
            s[t, t] = plan.weights[t]
        assert np.allclose(apply_sampling(a, plan), a @ omega @ s, atol=1e-12)

    def test_dimension_mismatch(self):
        plan = randomized_sampling(np.eye(4), 2, seed=0)
        with pytest.raises(ValueError):
            apply_sampling(np.ones((3, 5)), plan)


class TestRandomSignSketch:
    def test_expansion_alphabet(self):
        sk = random_sign_sketch(37, 11, seed=0)
        r = expand_signs(sk)
        assert set(np.unique(r)) <= {-1.0, 1.0}
        assert r.shape == (37, 11)

    def test_deterministic_for_seed(self):
        a = expand_signs(random_sign_sketch(50, 17, seed=21))
        b = expand_signs(random_sign_sketch(50, 17, seed=21))
        assert np.array_equal(a, b)

    def test_sign_balance_within_3_sigma(self):
        sk = random_sign_sketch(1024, 64, seed=5)
        r = expand_signs(sk)
        total = r.size
        assert total >= 10**4
        plus = np.count_nonzero(r > 0)
        sigma = math.sqrt(total * 0.25)
        assert abs(plus - total / 2) <= 3 * sigma

    def test_block_layout(self):
        sk = random_sign_sketch(1024, 64, seed=5)
        assert sk.block_width == 10
        assert sk.num_blocks == math.ceil(64 / 10)
        assert sk.num_blocks * sk.block_width >= sk.target_dim
        assert sk.scale == pytest.approx(1.0 / 8.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            random_sign_sketch(0, 4, seed=0)
        with pytest.raises(ValueError):
            random_sign_sketch(4, 0, seed=0)


class TestMailmanMultiply:
    def test_zero_row_gives_zero_row(self):
        rng = np.random.default_rng(6)
        a = rng.normal(size=(5, 33))
        a[2] = 0.0
        sk = random_sign_sketch(33, 12, seed=1)
        out = mailman_multiply(a, sk)
        assert np.allclose(out[2], 0.0)

    def test_all_plus_block(self):
        n, r = 13, 3
        codes = np.zeros(n, dtype=np.int64)  # all-plus patterns
        sk = SignSketch(source_dim=n, target_dim=r, block_width=3,
                        blocks=(codes,), scale=1.0 / math.sqrt(r))
        a = np.ones((1, n))
        out = mailman_multiply(a, sk)
        assert np.allclose(out, n / math.sqrt(r))

    def test_matches_naive(self):
        rng = np.random.default_rng(7)
        a = rng.normal(size=(17, 100))
        sk = random_sign_sketch(100, 25, seed=2)
        assert np.max(np.abs(mailman_multiply(a, sk) - naive_sign_multiply(a, sk))) <= 1e-10

    @pytest.mark.parametrize("n,r", [(1, 1), (1, 5), (2, 1), (3, 7), (100, 2),
                                     (127, 31), (128, 40), (1000, 3), (513, 65)])
    def test_matches_naive_edge_shapes(self, n, r):
        # includes n not a power of two and r below the block width
        rng = np.random.default_rng(n * 1000 + r)
        a = rng.normal(size=(4, n))
        sk = random_sign_sketch(n, r, seed=n + r)
        assert np.max(np.abs(mailman_multiply(a, sk) - naive_sign_multiply(a, sk))) <= 1e-10

    def test_dimension_mismatch(self):
        sk = random_sign_sketch(10, 4, seed=0)
        with pytest.raises(ValueError):
            mailman_multiply(np.ones((2, 9)), sk)
