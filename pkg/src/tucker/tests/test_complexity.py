"""
Tests for operation tallies.
"""

import numpy as np

from django.test import SimpleTestCase

from sketch.generators import SketchSpec
from tensor.dense import DenseTensor
from tucker.complexity import ComplexityCounter, predicted_counts
from tucker.config import PveControl, SolverConfig
from tucker.deterministic import sthosvd
from tucker.randomized import run_holistic, run_randomized


class CounterTests(SimpleTestCase):
    """
    Test the counter units.
    """

    def test_units(self):
        """
        Test m*k*n product units and m*n*min(m, n) SVD and QR units.
        """
        counter = ComplexityCounter()

        counter.matmul(2, 3, 4)
        counter.svd(10, 3)
        counter.svd(3, 10)
        counter.qr(6, 2)

        self.assertEqual(counter.as_dict(),
                         {'c_mm': 24, 'c_svd': 180, 'c_qr': 24})

    def test_closed_form_two_way(self):
        """
        Test the T-branch formula on a hand-worked 2-way case.
        """
        counts = predicted_counts((6, 5), (2, 2), (3, 3), 1, branch='t')

        # Range finders: 3 * 30 * 3 per mode; SVDs: 2 * n * 9 per mode;
        # core updates: 2 * 30 then 2 * 10.
        self.assertEqual(counts.c_mm, 2 * 270 + 60 + 20)
        self.assertEqual(counts.c_svd, 2 * 6 * 9 + 2 * 5 * 9)

    def test_unknown_branch(self):
        """
        Test that an unknown branch raises an error.
        """
        with self.assertRaises(ValueError):
            predicted_counts((4, 4), (2, 2), (3, 3), 1, branch='x')


class RecordedCountsTests(SimpleTestCase):
    """
    Test that solver runs record the closed-form tallies.
    """

    def setUp(self):
        self.tensor = DenseTensor(
            np.random.default_rng(0).standard_normal((9, 10, 11))
        )

    def test_matches_prediction(self):
        """
        Test recorded counts against the formulas for both branches.
        """
        cfg = SolverConfig(
            ranks=(2, 3, 4), oversampling=(2, 2, 1), power=2,
            processing_order=(1, 2, 0), sketch=SketchSpec(seed=1),
        )
        for branch in ('t', 'st'):
            counter = ComplexityCounter()

            run_randomized(self.tensor, cfg, branch, shift=True,
                           counter=counter)

            expected = predicted_counts(
                self.tensor.dims, cfg.ranks, cfg.sample_sizes, cfg.power,
                cfg.order(), branch,
            )
            self.assertEqual(counter, expected)

    def test_matches_prediction_for_realized_pve_counts(self):
        """
        Test recorded counts against the formulas with realized q_k.
        """
        cfg = SolverConfig(
            ranks=(2, 2, 2), oversampling=2, pve=PveControl(tol=0.1),
            sketch=SketchSpec(seed=2),
        )
        counter = ComplexityCounter()

        _, _, realized = run_randomized(
            self.tensor, cfg, 'st', shift=True, pve=True, counter=counter
        )

        expected = predicted_counts(
            self.tensor.dims, cfg.ranks, cfg.sample_sizes, realized
        )
        self.assertEqual(counter, expected)


class HolisticCountsTests(SimpleTestCase):
    """
    Test the tallies of the holistic solvers.
    """

    def setUp(self):
        self.tensor = DenseTensor(
            np.random.default_rng(5).standard_normal((6, 6, 6))
        )

    def holistic_counter(self, shift):
        """
        Run the holistic ST branch and return its counter.
        """
        cfg = SolverConfig(
            ranks=(2, 2, 2), oversampling=1, power=1,
            sketch=SketchSpec(seed=3), shift_enabled=shift,
        )
        counter = ComplexityCounter()
        run_holistic(self.tensor, cfg, 'st', counter=counter)
        return counter

    def test_plain_passes_use_qr(self):
        """
        Test that the plain range finder orthonormalizes by QR only.
        """
        counter = self.holistic_counter(shift=False)

        # Per mode: QR of the 6 x 3 sketch and of one 6 x 3 power iterate.
        self.assertEqual(counter.c_qr, 3 * 2 * 6 * 3 * 3)
        # SVDs only come from ST-HOSVD of the 3 x 3 x 3 compressed tensor.
        self.assertEqual(counter.c_svd, 3 * 9 * 3 + 3 * 6 * 3 + 3 * 4 * 3)

    def test_inner_decomposition_count(self):
        """
        Test that the SVD tally matches a direct ST-HOSVD of the core size.
        """
        counter = self.holistic_counter(shift=False)
        expected = ComplexityCounter()

        sthosvd(DenseTensor(np.ones((3, 3, 3))), (2, 2, 2), counter=expected)

        self.assertEqual(counter.c_svd, expected.c_svd)

    def test_shifted_passes_use_svd(self):
        """
        Test that shifted passes take one SVD per iteration after the QR.
        """
        counter = self.holistic_counter(shift=True)

        self.assertEqual(counter.c_qr, 3 * 6 * 3 * 3)
        self.assertEqual(
            counter.c_svd,
            3 * 6 * 3 * 3 + 3 * 9 * 3 + 3 * 6 * 3 + 3 * 4 * 3,
        )
