"""
Django command to write a synthetic test tensor to a DTNS1 file.
"""

from django.core.management.base import BaseCommand, CommandError

from core import cli
from tensor.dtns import save_tensor


class Command(BaseCommand):
    help = 'Generate a synthetic test tensor as a DTNS1 file.'

    def add_arguments(self, parser):
        cli.add_recipe_arguments(parser, required=True)
        parser.add_argument('--out', required=True, help='Output file.')

    def handle(self, *args, **options):
        source = cli.source_from_options(options)
        t = cli.load_source(source)
        try:
            path = save_tensor(options['out'], t)
        except OSError as exc:
            raise CommandError(f'cannot write {options["out"]}: {exc}',
                               returncode=cli.EXIT_IO)
        self.stdout.write(self.style.SUCCESS(
            f'Wrote recipe {source["recipe"]} tensor {t.dims} to {path}'
        ))
