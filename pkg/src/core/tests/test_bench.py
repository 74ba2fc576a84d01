"""
Tests for the bench command.
"""

import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import TestCase

from core.models import RunRecord
from testbed.runner import CSV_HEADER


def bench(**options):
    """
    Run bench on a small recipe b sweep and return its output.
    """
    params = dict(recipe='b', n=8, decay='fast', oversample=[1], power=[1],
                  seed=5, workers=1, no_timing=True)
    params.update(options)
    out = StringIO()
    call_command('bench', stdout=out, **params)
    return out.getvalue()


class BenchCommandTests(TestCase):
    """
    Test the bench command.
    """

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def test_one_row_per_cell(self):
        """
        Test a 2 ranks x 2 algorithms x 3 trials sweep.
        """
        output = bench(algorithms=['rand-thosvd', 'shifted-sthosvd'],
                       ranks=['2x2x2', '3x3x3'], trials=3)

        lines = output.splitlines()
        self.assertEqual(lines[0], ','.join(CSV_HEADER))
        self.assertEqual(len(lines), 13)

    def test_rerun_is_byte_identical(self):
        """
        Test that a seeded sweep without timings reproduces exactly.
        """
        options = dict(algorithms=['rand-sthosvd'], ranks=['2x2x2'],
                       trials=2)

        self.assertEqual(bench(**options), bench(**options))

    def test_workers_do_not_change_rows(self):
        """
        Test that running cells in parallel gives the same CSV.
        """
        options = dict(algorithms=['rand-thosvd', 'shifted-thosvd'],
                       ranks=['2x2x2'], trials=2)

        self.assertEqual(bench(workers=1, **options),
                         bench(workers=3, **options))

    def test_plan_file(self):
        """
        Test reading the grid from a JSON plan.
        """
        path = Path(self.tmp.name) / 'plan.json'
        path.write_text(json.dumps({
            'recipe': 'b',
            'recipe_params': {'n': 8, 'decay': 'slow'},
            'algorithms': ['rand-sthosvd'],
            'ranks': [[2, 2, 2]],
            'oversample': [1],
            'trials': 2,
            'seed': 9,
        }))
        out = StringIO()

        call_command('bench', plan=str(path), workers=1, no_timing=True,
                     stdout=out)

        self.assertEqual(len(out.getvalue().splitlines()), 3)

    def test_csv_file_and_summary(self):
        """
        Test writing the CSV to a file and printing a summary.
        """
        path = Path(self.tmp.name) / 'out' / 'bench.csv'

        output = bench(algorithms=['rand-thosvd'], ranks=['2x2x2'], trials=2,
                       out=str(path))

        self.assertEqual(len(path.read_text().splitlines()), 3)
        self.assertIn('rand-thosvd config 0: median RE', output)
        self.assertIn(f'Wrote 2 rows to {path}', output)

    def test_record(self):
        """
        Test that --record stores one run per cell.
        """
        bench(algorithms=['rand-thosvd', 'rand-sthosvd'], ranks=['2x2x2'],
              trials=2, record=True)

        self.assertEqual(RunRecord.objects.count(), 4)
        self.assertEqual(
            sorted(RunRecord.objects.values_list('trial', flat=True)),
            [0, 0, 1, 1],
        )

    def test_invalid_ranks(self):
        """
        Test that malformed ranks exit with code 2.
        """
        with self.assertRaises(CommandError) as ctx:
            bench(algorithms=['rand-thosvd'], ranks=['2x0x2'])

        self.assertEqual(ctx.exception.returncode, 2)

    def test_sample_size_too_large(self):
        """
        Test that a grid that does not fit the tensor exits with code 2.
        """
        with self.assertRaises(CommandError) as ctx:
            bench(algorithms=['rand-thosvd'], ranks=['8x8x8'])

        self.assertEqual(ctx.exception.returncode, 2)

    def test_missing_plan(self):
        """
        Test that an unreadable plan file exits with code 3.
        """
        with self.assertRaises(CommandError) as ctx:
            call_command('bench', plan=str(Path(self.tmp.name) / 'none'),
                         stdout=StringIO())

        self.assertEqual(ctx.exception.returncode, 3)
