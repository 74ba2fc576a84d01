"""
Django command to wait for the run database to be available
"""

import logging
import time

from psycopg import OperationalError as PsycopgError

from django.db import OperationalError
from django.core.management.base import BaseCommand, CommandError

from core import cli


logger = logging.getLogger(__name__)


class Command(BaseCommand):
    """
    Django command to pause execution until database is available
    """

    def add_arguments(self, parser):
        parser.add_argument('--timeout', type=float, default=None,
                            help='Give up after this many seconds.')

    def handle(self, *args, **options):
        self.stdout.write('Waiting for database...')
        timeout = options['timeout']
        start = time.monotonic()
        db_up = False
        while not db_up:
            try:
                self.check(databases=['default'])
                db_up = True
            except (PsycopgError, OperationalError) as exc:
                logger.debug('database check failed: %s', exc)
                if (timeout is not None
                        and time.monotonic() - start >= timeout):
                    raise CommandError(
                        f'Database unavailable after {timeout:g} seconds.',
                        returncode=cli.EXIT_IO,
                    )
                self.stdout.write('Database unavailable, waiting 1 second...')
                time.sleep(1)
        self.stdout.write(self.style.SUCCESS('Database available!'))
