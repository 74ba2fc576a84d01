"""
Tests for dense tensors and multilinear primitives.
"""

import numpy as np

from django.test import SimpleTestCase

from tensor.dense import (
    DenseTensor,
    fold,
    frobenius_norm,
    inner_product,
    mode_product,
    multi_mode_product,
    tendiag,
    unfold,
)


def sample_tensor(dims=(3, 4, 2), seed=0):
    """
    Create and return a seeded random tensor.
    """
    rng = np.random.default_rng(seed)
    return DenseTensor(rng.standard_normal(dims))


class DenseTensorTests(SimpleTestCase):
    """
    Test the DenseTensor value type.
    """

    def test_storage_order_is_mode_zero_fastest(self):
        """
        Test that ravel enumerates the first index fastest.
        """
        t = DenseTensor.from_storage(np.arange(6.0), (2, 3))

        self.assertEqual(t.data[1, 0], 1.0)
        self.assertEqual(t.data[0, 1], 2.0)
        np.testing.assert_array_equal(t.ravel(), np.arange(6.0))

    def test_data_is_read_only(self):
        """
        Test that the wrapped array cannot be mutated.
        """
        t = sample_tensor()

        with self.assertRaises(ValueError):
            t.data[0, 0, 0] = 1.0

    def test_from_storage_size_mismatch(self):
        """
        Test that a value count not matching dims raises an error.
        """
        with self.assertRaises(ValueError):
            DenseTensor.from_storage(np.zeros(5), (2, 3))

    def test_zero_dimension_rejected(self):
        """
        Test that an empty mode is rejected.
        """
        with self.assertRaises(ValueError):
            DenseTensor(np.zeros((2, 0, 3)))

    def test_equality_compares_values(self):
        """
        Test that tensors with equal entries compare equal.
        """
        self.assertEqual(sample_tensor(seed=4), sample_tensor(seed=4))
        self.assertNotEqual(sample_tensor(seed=4), sample_tensor(seed=5))


class UnfoldTests(SimpleTestCase):
    """
    Test unfolding and folding.
    """

    def test_unfold_column_order(self):
        """
        Test that unfolding columns run over the lowest remaining mode
        fastest.
        """
        t = sample_tensor((2, 3, 4))

        m = unfold(t, 1)

        self.assertEqual(m.shape, (3, 8))
        # Column index for (i0, i2) is i0 + 2 * i2.
        np.testing.assert_array_equal(m[:, 1 + 2 * 3], t.data[1, :, 3])

    def test_unfold_fold_round_trip_is_exact(self):
        """
        Test that fold inverts unfold bit for bit in every mode.
        """
        t = sample_tensor((3, 4, 2, 5))

        for k in range(t.ndim):
            self.assertEqual(fold(unfold(t, k), k, t.dims), t)

    def test_unfold_bad_mode(self):
        """
        Test that an out-of-range mode raises an error.
        """
        with self.assertRaises(ValueError):
            unfold(sample_tensor(), 3)

    def test_fold_shape_mismatch(self):
        """
        Test that folding a wrongly shaped matrix raises an error.
        """
        with self.assertRaises(ValueError):
            fold(np.zeros((3, 7)), 0, (3, 4, 2))


class ModeProductTests(SimpleTestCase):
    """
    Test mode products and norms.
    """

    def test_mode_product_matches_unfolding(self):
        """
        Test that unfold(t x_k b, k) equals b @ unfold(t, k).
        """
        t = sample_tensor((3, 4, 2))
        b = np.random.default_rng(1).standard_normal((5, 4))

        result = mode_product(t, b, 1)

        self.assertEqual(result.dims, (3, 5, 2))
        np.testing.assert_allclose(unfold(result, 1), b @ unfold(t, 1))

    def test_mode_product_shape_mismatch(self):
        """
        Test that a matrix with the wrong column count raises an error.
        """
        with self.assertRaises(ValueError):
            mode_product(sample_tensor(), np.zeros((2, 5)), 0)

    def test_products_in_distinct_modes_commute(self):
        """
        Test that mode products along different modes commute.
        """
        rng = np.random.default_rng(2)
        t = sample_tensor((3, 4, 2))
        a, b = rng.standard_normal((2, 3)), rng.standard_normal((3, 2))

        left = mode_product(mode_product(t, a, 0), b, 2)
        right = mode_product(mode_product(t, b, 2), a, 0)

        np.testing.assert_allclose(left.data, right.data, atol=1e-13)

    def test_multi_mode_product_transpose(self):
        """
        Test that transposed multi-mode products apply b.T in each mode.
        """
        rng = np.random.default_rng(3)
        t = sample_tensor((3, 4, 2))
        matrices = [rng.standard_normal((n, 2)) for n in t.dims]

        result = multi_mode_product(t, matrices, transpose=True)

        expected = t
        for k, b in enumerate(matrices):
            expected = mode_product(expected, b.T, k)
        self.assertEqual(result.dims, (2, 2, 2))
        np.testing.assert_allclose(result.data, expected.data)

    def test_norm_and_inner_product(self):
        """
        Test that the Frobenius norm squared equals the self inner product.
        """
        t = sample_tensor()

        self.assertAlmostEqual(frobenius_norm(t) ** 2, inner_product(t, t))

    def test_inner_product_dims_mismatch(self):
        """
        Test that tensors with different dims raise an error.
        """
        with self.assertRaises(ValueError):
            inner_product(sample_tensor((2, 2)), sample_tensor((2, 3)))

    def test_tendiag(self):
        """
        Test that tendiag places the vector on the superdiagonal.
        """
        t = tendiag([3.0, 2.0], (2, 3, 4))

        self.assertEqual(t.data[1, 1, 1], 2.0)
        self.assertEqual(frobenius_norm(t) ** 2, 13.0)

    def test_tendiag_too_long(self):
        """
        Test that a vector longer than the smallest dim raises an error.
        """
        with self.assertRaises(ValueError):
            tendiag([1.0, 2.0, 3.0], (2, 5))
