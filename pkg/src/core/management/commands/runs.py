"""
Django command to list recorded runs.
"""

from django.core.management.base import BaseCommand

from core import cli
from core.models import RunRecord
from core.serializers import RunRecordSerializer


class Command(BaseCommand):
    help = 'List recorded solver runs, newest last.'

    def add_arguments(self, parser):
        parser.add_argument('--algorithm', help='Only runs of this solver.')
        parser.add_argument('--limit', type=int, default=20,
                            help='Show at most this many runs.')
        parser.add_argument('--json', action='store_true',
                            help='Print the records as JSON.')

    def handle(self, *args, **options):
        records = RunRecord.objects.all()
        if options['algorithm']:
            records = records.filter(algorithm=options['algorithm'])
        records = list(records.order_by('-id')[:options['limit']])[::-1]

        if options['json']:
            data = RunRecordSerializer(records, many=True).data
            self.stdout.write(cli.render_json(data))
            return
        if not records:
            self.stdout.write('No recorded runs.')
            return
        for record in records:
            re = '-' if record.relative_error is None else (
                f'{record.relative_error:.3e}'
            )
            status = 'failed' if record.failed else f'RE {re}'
            self.stdout.write(f'{record.id}: {record} {status}')
