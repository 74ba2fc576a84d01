"""
Tests for deterministic T-HOSVD and ST-HOSVD.
"""

import numpy as np

from django.test import SimpleTestCase

from linalg.kernels import orth, singular_values, tail_energy, truncated_svd
from tensor.dense import (
    DenseTensor,
    frobenius_norm,
    multi_mode_product,
    unfold,
)
from tucker.deterministic import sthosvd, sthosvd_with_residuals, thosvd
from tucker.factorization import project, reconstruct, relative_error


def exact_rank_tensor(dims, ranks, seed=0):
    """
    Create and return a tensor with the given multilinear rank.
    """
    rng = np.random.default_rng(seed)
    core = rng.standard_normal(ranks)
    factors = [orth(rng.standard_normal((n, r))) for n, r in zip(dims, ranks)]
    return multi_mode_product(DenseTensor(core), factors)


def random_tensor(dims, seed=0):
    """
    Create and return a dense Gaussian tensor.
    """
    return DenseTensor(np.random.default_rng(seed).standard_normal(dims))


def tail_sum(t, ranks):
    """
    Sum over modes of the squared unfolding tail energies.
    """
    return sum(
        tail_energy(singular_values(unfold(t, k)), r) ** 2
        for k, r in enumerate(ranks)
    )


class ThosvdTests(SimpleTestCase):
    """
    Test T-HOSVD.
    """

    def test_exact_rank_recovery(self):
        """
        Test that a rank-(2,2,2) tensor is recovered to 1e-10.
        """
        t = exact_rank_tensor((6, 7, 8), (2, 2, 2))

        self.assertLessEqual(relative_error(t, thosvd(t, (2, 2, 2))), 1e-10)

    def test_full_ranks(self):
        """
        Test that ranks equal to dims give a full decomposition.
        """
        t = random_tensor((4, 5, 3))

        self.assertLessEqual(relative_error(t, thosvd(t, t.dims)), 1e-12)

    def test_factors_orthonormal_and_core_consistent(self):
        """
        Test orthonormal factors and core = t x_k U_k^T.
        """
        t = random_tensor((6, 5, 7), seed=1)

        f = thosvd(t, (3, 2, 4))

        self.assertLessEqual(f.orthonormality_defect(), 1e-10)
        self.assertEqual(f.ranks, (3, 2, 4))
        core = project(t, f.factors)
        self.assertLessEqual(
            frobenius_norm(DenseTensor(core.data - f.core.data)),
            1e-10 * frobenius_norm(t),
        )

    def test_error_bound_on_random_tensors(self):
        """
        Test the per-mode residual identity and the tail-sum bound on 12^3.
        """
        ranks = (4, 4, 4)
        for seed in range(20):
            t = random_tensor((12, 12, 12), seed=seed)
            f = thosvd(t, ranks)

            for k, u in enumerate(f.factors):
                m = unfold(t, k)
                residual = np.linalg.norm(m - u @ (u.T @ m)) ** 2
                expected = tail_energy(singular_values(m), ranks[k]) ** 2
                self.assertLessEqual(
                    abs(residual - expected), 1e-10 * expected
                )
            error = frobenius_norm(
                DenseTensor(t.data - reconstruct(f).data)
            ) ** 2
            self.assertLessEqual(error, tail_sum(t, ranks) * (1 + 1e-12))

    def test_rank_exceeds_dimension(self):
        """
        Test that a rank above its mode size raises an error.
        """
        with self.assertRaises(ValueError):
            thosvd(random_tensor((3, 4, 5)), (4, 2, 2))


class SthosvdTests(SimpleTestCase):
    """
    Test ST-HOSVD.
    """

    def test_exact_rank_any_order(self):
        """
        Test exact recovery in every processing order.
        """
        t = exact_rank_tensor((6, 7, 8), (2, 3, 2), seed=2)
        orders = [(0, 1, 2), (2, 1, 0), (1, 0, 2), (1, 2, 0)]

        for order in orders:
            f = sthosvd(t, (2, 3, 2), order)
            self.assertLessEqual(relative_error(t, f), 1e-10)

    def test_matrix_specialization(self):
        """
        Test that on a matrix the error equals the truncated SVD error.
        """
        m = np.random.default_rng(3).standard_normal((9, 6))
        u, s, v = truncated_svd(m, 2)
        expected = np.linalg.norm(m - u @ np.diag(s) @ v.T)

        f = sthosvd(DenseTensor(m), (2, 6))
        error = np.linalg.norm(m - reconstruct(f).data)

        self.assertAlmostEqual(error, expected, places=12)

    def test_error_bound_on_random_tensors(self):
        """
        Test the tail-sum bound for ST-HOSVD on random 12^3 tensors.
        """
        ranks = (4, 4, 4)
        for seed in range(20):
            t = random_tensor((12, 12, 12), seed=100 + seed)
            f = sthosvd(t, ranks, (2, 0, 1))

            error = (relative_error(t, f) * frobenius_norm(t)) ** 2
            self.assertLessEqual(error, tail_sum(t, ranks) * (1 + 1e-12))

    def test_error_telescopes_over_residuals(self):
        """
        Test that the squared error is at most the sum of step residuals.
        """
        t = random_tensor((8, 9, 10), seed=4)

        f, residuals = sthosvd_with_residuals(t, (3, 3, 3), (1, 2, 0))

        error = (relative_error(t, f) * frobenius_norm(t)) ** 2
        self.assertEqual(len(residuals), 3)
        self.assertLessEqual(
            error, sum(r ** 2 for r in residuals) * (1 + 1e-10)
        )

    def test_shrinks_core_in_order(self):
        """
        Test that the core has the target ranks and factors are orthonormal.
        """
        t = random_tensor((5, 6, 7), seed=5)

        f = sthosvd(t, (2, 3, 4), (2, 0, 1))

        self.assertEqual(f.core.dims, (2, 3, 4))
        self.assertLessEqual(f.orthonormality_defect(), 1e-10)

    def test_invalid_permutation(self):
        """
        Test that an order that is not a permutation raises an error.
        """
        with self.assertRaises(ValueError):
            sthosvd(random_tensor((3, 3, 3)), (2, 2, 2), (0, 1, 1))
