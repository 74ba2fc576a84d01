"""
Django command to compute one Tucker decomposition.
"""

import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from core import cli
from core.serializers import (
    DecomposeSummarySerializer,
    RunRecordSerializer,
    SolverOptionsSerializer,
)
from tensor.dtns import save_matrix, save_tensor
from tucker.factorization import relative_error
from tucker.registry import solve


logger = logging.getLogger(__name__)


class Command(BaseCommand):
    """
    Decompose a DTNS1 file or a generated tensor and print a JSON summary.

    With --out DIR the core and factors are written as core.dtns and
    factor_1.dtns ... factor_d.dtns next to summary.json.
    """
    help = 'Compute a Tucker decomposition and print a JSON summary.'

    def add_arguments(self, parser):
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument('--input', help='DTNS1 tensor file.')
        source.add_argument('--recipe', choices=cli.RECIPES,
                            help='Synthetic tensor recipe.')
        cli.add_recipe_arguments(parser, with_recipe=False)
        cli.add_solver_arguments(parser)
        parser.add_argument('--out', help='Output directory.')
        parser.add_argument('--record', action='store_true',
                            help='Store the run in the database.')

    def handle(self, *args, **options):
        seed = cli.pick_seed(options['seed'])
        data = cli.validated(
            SolverOptionsSerializer, {**options, 'seed': seed}
        )
        cfg, algorithm = data['config'], data['algorithm']

        source = cli.source_from_options(options)
        t = cli.load_source(source)
        cli.check_fits(algorithm, cfg, t.dims)

        try:
            outcome = solve(algorithm, t, cfg)
            re = relative_error(t, outcome.factorization)
        except Exception as exc:
            logger.exception('%s failed', algorithm)
            raise CommandError(f'{algorithm} failed: {exc}',
                               returncode=cli.EXIT_SOLVER)

        summary = DecomposeSummarySerializer({
            'algorithm': outcome.algorithm,
            'source': source,
            'dims': list(t.dims),
            'ranks': list(cfg.ranks),
            'oversampling': list(cfg.oversampling),
            'power': cfg.power,
            'order': [k + 1 for k in cfg.order()],
            'sketch': cfg.sketch.family.value,
            'seed': seed,
            'realized_q': (
                None if outcome.realized_q is None
                else list(outcome.realized_q)
            ),
            're': re,
            'seconds': outcome.seconds,
            'alpha_final': list(outcome.final_alphas),
            'shift_trace': (
                [] if outcome.trace is None else outcome.trace.as_list()
            ),
            'counters': outcome.counter.as_dict(),
        }).data
        text = cli.render_json(summary)

        if options['out']:
            self.write_files(Path(options['out']), outcome.factorization, text)
        if options['record']:
            self.record(summary, source)
        self.stdout.write(text)

    def write_files(self, out, f, text):
        try:
            out.mkdir(parents=True, exist_ok=True)
            save_tensor(out / 'core.dtns', f.core)
            for k, u in enumerate(f.factors, start=1):
                save_matrix(out / f'factor_{k}.dtns', u)
        except OSError as exc:
            raise CommandError(f'cannot write {out}: {exc}',
                               returncode=cli.EXIT_IO)
        cli.write_text(out / 'summary.json', text)

    def record(self, summary, source):
        serializer = RunRecordSerializer(data={
            'algorithm': summary['algorithm'],
            'recipe': source.get('recipe') or source.get('input', ''),
            'ranks': summary['ranks'],
            'oversampling': summary['oversampling'],
            'power': summary['power'],
            'realized_q': summary['realized_q'],
            'seed': summary['seed'],
            're': summary['re'],
            'seconds': summary['seconds'],
            'alpha_final': summary['alpha_final'],
            'shift_trace': summary['shift_trace'],
            'counters': summary['counters'],
        })
        serializer.is_valid(raise_exception=True)
        record = serializer.save()
        logger.info('recorded run %d', record.id)
