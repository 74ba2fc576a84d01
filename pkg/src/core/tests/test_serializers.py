"""
Tests for the command serializers.
"""

from django.test import SimpleTestCase, TestCase

from core.models import RunRecord
from core.serializers import (
    DecomposeSummarySerializer,
    ExperimentPlanSerializer,
    RunRecordSerializer,
    SolverOptionsSerializer,
)
from sketch.generators import SketchFamily


def summary_data(**fields):
    """
    Create and return a valid decompose summary for a 4x4x4 tensor.
    """
    data = {
        'algorithm': 'rand-sthosvd',
        'source': {'recipe': 'b', 'recipe_params': {'n': 4},
                   'tensor_seed': 0},
        'dims': [4, 4, 4],
        'ranks': [2, 2, 2],
        'oversampling': [1, 1, 1],
        'power': 1,
        'order': [3, 1, 2],
        'sketch': 'gaussian',
        'seed': 1,
        'realized_q': None,
        're': 0.5,
        'seconds': 0.01,
        'alpha_final': [0.0, 0.0, 0.0],
        'shift_trace': [],
        'counters': {'matmul_flops': 10},
    }
    data.update(fields)
    return data


class SolverOptionsSerializerTests(SimpleTestCase):
    """
    Test building solver configs from options.
    """

    def test_defaults(self):
        """
        Test that missing options fall back to the solver defaults.
        """
        serializer = SolverOptionsSerializer(data={
            'algorithm': 'rand-thosvd', 'ranks': [3, 4, 5], 'seed': 8,
        })

        self.assertTrue(serializer.is_valid(), serializer.errors)
        cfg = serializer.validated_data['config']
        self.assertEqual(cfg.ranks, (3, 4, 5))
        self.assertEqual(cfg.oversampling, (10, 10, 10))
        self.assertEqual(cfg.power, 1)
        self.assertIsNone(cfg.pve)
        self.assertIs(cfg.sketch.family, SketchFamily.GAUSSIAN)
        self.assertEqual(cfg.sketch.seed, 8)

    def test_ranks_string_and_order(self):
        """
        Test rank strings and the 1-based processing order.
        """
        serializer = SolverOptionsSerializer(data={
            'algorithm': 'rand-sthosvd', 'ranks': '2x3x4',
            'oversample': [1, 2, 3], 'order': [3, 1, 2], 'seed': 0,
        })

        self.assertTrue(serializer.is_valid(), serializer.errors)
        cfg = serializer.validated_data['config']
        self.assertEqual(cfg.ranks, (2, 3, 4))
        self.assertEqual(cfg.oversampling, (1, 2, 3))
        self.assertEqual(cfg.order(), (2, 0, 1))

    def test_pve_default_tolerance(self):
        """
        Test that the adaptive solvers get the default tolerance.
        """
        serializer = SolverOptionsSerializer(data={
            'algorithm': 'pve', 'ranks': [2, 2], 'qmax': 7, 'seed': 0,
        })

        self.assertTrue(serializer.is_valid(), serializer.errors)
        pve = serializer.validated_data['config'].pve
        self.assertEqual(pve.tol, 0.5)
        self.assertEqual(pve.q_max, 7)

    def test_invalid_options(self):
        """
        Test options the solver rejects.
        """
        cases = [
            {'algorithm': 'rand-thosvd', 'ranks': [0, 2], 'seed': 0},
            {'algorithm': 'rand-thosvd', 'ranks': 'axb', 'seed': 0},
            {'algorithm': 'rand-thosvd', 'ranks': [2, 2],
             'oversample': [1, 2, 3], 'seed': 0},
            {'algorithm': 'rand-thosvd', 'ranks': [2, 2], 'order': [1, 1],
             'seed': 0},
            {'algorithm': 'pve', 'ranks': [2, 2], 'pve_tol': 0.0, 'seed': 0},
            {'algorithm': 'nope', 'ranks': [2, 2], 'seed': 0},
            {'algorithm': 'rand-thosvd', 'ranks': [2, 2], 'seed': -1},
            {'algorithm': 'rand-thosvd', 'ranks': [2, 2], 'seed': 2 ** 63},
        ]

        for data in cases:
            with self.subTest(data=data):
                serializer = SolverOptionsSerializer(data=data)
                self.assertFalse(serializer.is_valid())


class ExperimentPlanSerializerTests(SimpleTestCase):
    """
    Test building experiment plans.
    """

    def test_grid(self):
        """
        Test that ranks, oversampling and power expand to a grid.
        """
        serializer = ExperimentPlanSerializer(data={
            'recipe': 'a',
            'recipe_params': {'n': 20},
            'algorithms': ['rand-thosvd', 'pve'],
            'ranks': ['2x2x2', [3, 3, 3]],
            'oversample': [1, 2],
            'power': [0, 1, 2],
            'trials': 4,
            'seed': 12,
        })

        self.assertTrue(serializer.is_valid(), serializer.errors)
        plan = serializer.validated_data['plan']
        self.assertEqual(len(plan.configs), 12)
        self.assertEqual(plan.trials, 4)
        self.assertEqual(plan.recipe_params, {'n': 20})
        self.assertEqual(len(list(plan.cells())), 12 * 2 * 4)

    def test_invalid_plan(self):
        """
        Test plans that cannot run.
        """
        cases = [
            {'recipe': 'z', 'algorithms': ['thosvd'], 'ranks': ['2x2'],
             'seed': 0},
            {'recipe': 'a', 'algorithms': [], 'ranks': ['2x2'], 'seed': 0},
            {'recipe': 'a', 'algorithms': ['thosvd'], 'ranks': [],
             'seed': 0},
            {'recipe': 'a', 'algorithms': ['thosvd'], 'ranks': ['2x2'],
             'trials': 0, 'seed': 0},
        ]

        for data in cases:
            with self.subTest(data=data):
                serializer = ExperimentPlanSerializer(data=data)
                self.assertFalse(serializer.is_valid())


class DecomposeSummarySerializerTests(SimpleTestCase):
    """
    Test validating decompose summaries.
    """

    def test_valid_summary(self):
        """
        Test that a consistent summary validates.
        """
        serializer = DecomposeSummarySerializer(data=summary_data())

        self.assertTrue(serializer.is_valid(), serializer.errors)

    def test_inconsistent_summaries(self):
        """
        Test summaries with mismatched lists or sources.
        """
        cases = [
            {'ranks': [2, 2]},
            {'order': [1, 1, 2]},
            {'order': [0, 1, 2]},
            {'source': {}},
            {'source': {'input': 'x.dtns', 'recipe': 'b'}},
            {'re': -1.0},
        ]

        for fields in cases:
            with self.subTest(fields=fields):
                serializer = DecomposeSummarySerializer(
                    data=summary_data(**fields)
                )
                self.assertFalse(serializer.is_valid())


class RunRecordSerializerTests(TestCase):
    """
    Test storing run reports.
    """

    def test_failed_report(self):
        """
        Test that a failed cell is stored without an error value.
        """
        serializer = RunRecordSerializer(data={
            'algorithm': 'rand-thosvd',
            'recipe': 'b',
            'ranks': [2, 2, 2],
            'oversampling': [20, 20, 20],
            'power': 1,
            'realized_q': None,
            'trial': 1,
            'seed': 99,
            're': None,
            'seconds': None,
            'alpha_final': [],
            'counters': {},
            'failed': True,
            'error': 'Sample size 22 of mode 0 exceeds min(8, 64).',
        })

        self.assertTrue(serializer.is_valid(), serializer.errors)
        record = serializer.save()
        self.assertTrue(RunRecord.objects.get(id=record.id).failed)
        self.assertIsNone(serializer.data['re'])
