"""
Django command to run an experiment grid and write a CSV report.
"""

import io
import logging

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from core import cli
from core.serializers import ExperimentPlanSerializer, RunRecordSerializer
from testbed.runner import aggregate, run_experiment, write_csv


logger = logging.getLogger(__name__)


class Command(BaseCommand):
    """
    Run every (config, algorithm, trial) cell of a plan.

    The plan comes from --plan FILE (JSON, keys as in
    ExperimentPlanSerializer) or from the grid flags. The CSV goes to --out
    or to standard output.
    """
    help = 'Run solvers over a seeded grid and write one CSV row per cell.'

    def add_arguments(self, parser):
        parser.add_argument('--plan', help='JSON experiment plan.')
        cli.add_recipe_arguments(parser)
        cli.add_solver_arguments(parser, grid=True)
        parser.add_argument('--trials', type=int, default=1,
                            help='Trials per cell.')
        parser.add_argument('--workers', type=int,
                            default=settings.TUCKER['SKETCH_THREADS'],
                            help='Cells run at the same time.')
        parser.add_argument('--out', help='CSV file.')
        parser.add_argument('--no-timing', action='store_true',
                            help='Leave the seconds column empty.')
        parser.add_argument('--record', action='store_true',
                            help='Store every cell in the database.')

    def plan_data(self, options):
        if options['plan']:
            data = cli.read_json(options['plan'])
            if not isinstance(data, dict):
                raise CommandError('a plan file holds a JSON object',
                                   returncode=cli.EXIT_INVALID)
            data.setdefault('seed', cli.pick_seed(options['seed']))
            return data
        data = {
            name: options[name]
            for name in ('recipe', 'algorithms', 'ranks', 'oversample',
                         'power', 'order', 'sketch', 'pve_tol', 'qmax',
                         'trials', 'tensor_seed')
            if options.get(name) is not None
        }
        data['recipe_params'] = cli.recipe_params(options)
        data['seed'] = cli.pick_seed(options['seed'])
        return data

    def handle(self, *args, **options):
        plan = cli.validated(
            ExperimentPlanSerializer, self.plan_data(options)
        )['plan']
        t = cli.load_source({
            'recipe': plan.recipe,
            'recipe_params': plan.recipe_params,
            'tensor_seed': plan.tensor_seed,
        })
        for algorithm in plan.algorithms:
            for cfg in plan.configs:
                cli.check_fits(algorithm, cfg, t.dims)

        reports = run_experiment(plan, tensor=t,
                                 max_workers=options['workers'])
        if all(report.failed for report in reports):
            raise CommandError(f'every cell failed: {reports[0].error}',
                               returncode=cli.EXIT_SOLVER)

        stream = io.StringIO()
        write_csv(reports, stream, no_timing=options['no_timing'])
        if options['record']:
            self.record(reports)
        if not options['out']:
            self.stdout.write(stream.getvalue(), ending='')
            return
        cli.write_text(options['out'], stream.getvalue())
        for summary in aggregate(reports):
            self.stdout.write(
                f'{summary.algorithm} config {summary.config_index}: '
                f'median RE {summary.re_median:.3e}, '
                f'mean RE {summary.re_mean:.3e} over {summary.trials} trials'
                + (f' ({summary.failed} failed)' if summary.failed else '')
            )
        self.stdout.write(self.style.SUCCESS(
            f'Wrote {len(reports)} rows to {options["out"]}'
        ))

    def record(self, reports):
        serializer = RunRecordSerializer(
            data=[report.as_dict() for report in reports], many=True,
        )
        serializer.is_valid(raise_exception=True)
        serializer.save()
        logger.info('recorded %d runs', len(reports))
