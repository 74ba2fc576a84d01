"""
Django command to evaluate the probabilistic error bound of a run.
"""

import logging

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from bounds.error import (
    BoundHypothesisError,
    sthosvd_error_bound,
    thosvd_error_bound,
)
from bounds.params import BoundParams
from core import cli
from core.serializers import DecomposeSummarySerializer
from sketch.generators import SketchFamily
from tensor.dense import frobenius_norm
from tucker.power import ShiftTrace
from tucker.registry import ALGORITHMS


logger = logging.getLogger(__name__)

BOUNDED_KINDS = ('randomized', 'pve')


class Command(BaseCommand):
    """
    Evaluate the bound for a decompose summary and compare it with the
    observed error.

    The tensor is reloaded from the summary source, the shifts come from
    its shift trace.
    """
    help = 'Print the error bound of a decompose run and its probability.'

    def add_arguments(self, parser):
        parser.add_argument('--summary', required=True,
                            help='summary.json written by decompose.')
        parser.add_argument('--j', type=int, nargs='+',
                            help='Index j per mode, or one for all modes '
                            '(default max(1, r - 1)).')
        parser.add_argument('--beta', type=float,
                            default=settings.TUCKER['BOUND_BETA'])
        parser.add_argument('--gamma', type=float,
                            default=settings.TUCKER['BOUND_GAMMA'])

    def handle(self, *args, **options):
        summary = cli.validated(
            DecomposeSummarySerializer, cli.read_json(options['summary'])
        )
        algo = ALGORITHMS[summary['algorithm']]
        if algo.kind not in BOUNDED_KINDS:
            raise CommandError(
                f'no bound is available for {algo.id}; use a randomized or '
                'PVE solver.',
                returncode=cli.EXIT_INVALID,
            )
        if SketchFamily.parse(summary['sketch']) is not SketchFamily.GAUSSIAN:
            logger.warning('the bound assumes a Gaussian sketch, run used %s',
                           summary['sketch'])

        t = cli.load_source(summary['source'])
        if list(t.dims) != summary['dims']:
            raise CommandError(
                f'tensor dims {t.dims} differ from the summary '
                f'{summary["dims"]}.',
                returncode=cli.EXIT_INVALID,
            )
        j = options['j']
        if j is not None and len(j) == 1:
            j = j[0]
        sample_sizes = [
            r + s for r, s in zip(summary['ranks'], summary['oversampling'])
        ]
        try:
            params = BoundParams.from_run(
                t, summary['ranks'], sample_sizes,
                trace=ShiftTrace.from_list(summary['shift_trace']),
                j=j, beta=options['beta'], gamma=options['gamma'],
                order=[k - 1 for k in summary['order']],
            )
            evaluate = (
                thosvd_error_bound if algo.branch == 't'
                else sthosvd_error_bound
            )
            report = evaluate(params)
        except BoundHypothesisError as exc:
            raise CommandError(str(exc), returncode=cli.EXIT_BOUND)
        except (KeyError, ValueError) as exc:
            raise CommandError(f'cannot evaluate the bound: {exc}',
                               returncode=cli.EXIT_INVALID)

        norm = frobenius_norm(t)
        observed = summary['re'] * norm
        self.stdout.write(f'bound ({report.kind}): {report.value:.6e}')
        self.stdout.write(
            f'probability floor: {report.probability_floor:.6f}'
        )
        self.stdout.write(f'observed error: {observed:.6e}')
        self.stdout.write(f'observed RE: {summary["re"]:.6e}')
        self.stdout.write(f'bound RE: {report.value / norm:.6e}')
        if observed <= report.value:
            self.stdout.write(self.style.SUCCESS('bound holds'))
        else:
            self.stdout.write(self.style.WARNING('bound exceeded'))
