"""
Shared pieces of the management commands: common options, input loading,
JSON I/O and exit codes.
"""

import io
import logging
from pathlib import Path

import numpy as np

from django.conf import settings
from django.core.management.base import CommandError

from rest_framework.exceptions import ParseError
from rest_framework.parsers import JSONParser
from rest_framework.renderers import JSONRenderer

from core.serializers import SKETCH_CHOICES
from tensor.dtns import DtnsFormatError, load_tensor
from testbed.generators import DECAYS, RECIPES, generate
from tucker.registry import ALGORITHMS, resolve


logger = logging.getLogger(__name__)

EXIT_INVALID = 2
EXIT_IO = 3
EXIT_SOLVER = 4
EXIT_BOUND = 5

# Command-line option -> generator keyword, per recipe.
RECIPE_OPTIONS = {
    'a': ('n', 'n_terms', 'n_terms_big', 'gamma', 'sparsity'),
    'b': ('n', 'decay'),
    'c': ('dims', 'n_terms', 'n_terms_big', 'gamma', 'sparsity'),
}


def add_recipe_arguments(parser, with_recipe=True, required=False):
    """
    Add the generator parameters, and --recipe unless the caller adds it.
    """
    if with_recipe:
        parser.add_argument('--recipe', choices=RECIPES, required=required,
                            help='Synthetic tensor recipe.')
    parser.add_argument('--n', type=int, help='Mode size of recipes a, b.')
    parser.add_argument('--dims', type=int, nargs=3,
                        help='Mode sizes of recipe c.')
    parser.add_argument('--n-terms', type=int,
                        help='Number of rank-one terms (recipes a, c).')
    parser.add_argument('--n-terms-big', type=int,
                        help='Terms carrying the gamma weight.')
    parser.add_argument('--gamma', type=float, help='Weight gap.')
    parser.add_argument('--sparsity', type=float,
                        help='Fraction of nonzeros per factor vector.')
    parser.add_argument('--decay', choices=list(DECAYS),
                        help='Spectrum decay of recipe b.')
    parser.add_argument('--tensor-seed', type=int, default=0,
                        help='Seed of the generated tensor.')


def recipe_params(options) -> dict:
    """
    Generator keywords that were given on the command line.
    """
    params = {}
    for name in RECIPE_OPTIONS.get(options.get('recipe'), ()):
        value = options.get(name)
        if value is not None:
            params[name] = list(value) if name == 'dims' else value
    return params


def add_solver_arguments(parser, grid=False):
    """
    Add the solver options; with grid=True they take several values.
    """
    defaults = settings.TUCKER
    if grid:
        parser.add_argument('--algorithm', dest='algorithms', nargs='+',
                            choices=list(ALGORITHMS), help='Solvers to run.')
        parser.add_argument('--ranks', nargs='+',
                            help='Rank tuples such as 5x5x5.')
        parser.add_argument('--power', type=int, nargs='+',
                            help='Power iterations (default '
                            f'{defaults["POWER"]}).')
    else:
        parser.add_argument('--algorithm', required=True,
                            choices=list(ALGORITHMS), help='Solver to run.')
        parser.add_argument('--ranks', type=int, nargs='+', required=True,
                            help='Target multilinear rank.')
        parser.add_argument('--power', type=int,
                            help='Power iterations (default '
                            f'{defaults["POWER"]}).')
    parser.add_argument('--oversample', type=int, nargs='+',
                        help='Oversampling, one value or one per mode '
                        f'(default {defaults["OVERSAMPLING"]}).')
    parser.add_argument('--order', type=int, nargs='+',
                        help='Processing order of the modes, counted from 1.')
    parser.add_argument('--sketch', choices=SKETCH_CHOICES,
                        help=f'Sketch family (default {defaults["SKETCH"]}).')
    parser.add_argument('--pve-tol', type=float,
                        help='Tolerance of the adaptive power iteration.')
    parser.add_argument('--qmax', type=int,
                        help='Iteration cap of the adaptive power iteration '
                        f'(default {defaults["PVE_QMAX"]}).')
    parser.add_argument('--seed', type=int,
                        help='Master seed; a random one is logged if absent.')


def pick_seed(seed) -> int:
    """
    Return seed, or draw a fresh 63-bit seed and log it.
    """
    if seed is not None:
        return int(seed)
    seed = int(np.random.SeedSequence().entropy) >> 65
    logger.info('no --seed given, using %d', seed)
    return seed


def validated(serializer_class, data) -> dict:
    """
    Validate data with the serializer or fail with exit code 2.
    """
    serializer = serializer_class(data=data)
    if not serializer.is_valid():
        raise CommandError(
            f'invalid options: {flatten_errors(serializer.errors)}',
            returncode=EXIT_INVALID,
        )
    return serializer.validated_data


def flatten_errors(errors) -> str:
    """
    Serializer errors as one line.
    """
    if isinstance(errors, dict):
        parts = []
        for key, value in errors.items():
            name = '' if key == 'non_field_errors' else f'{key}: '
            parts.append(name + flatten_errors(value))
        return '; '.join(parts)
    if isinstance(errors, list):
        return ' '.join(flatten_errors(e) for e in errors)
    return str(errors)


def load_source(source: dict):
    """
    Load the tensor named by a summary source or by command options.

    Missing or malformed files exit with code 3, bad recipe parameters
    with code 2.
    """
    if source.get('input'):
        try:
            return load_tensor(source['input'])
        except (OSError, DtnsFormatError) as exc:
            raise CommandError(
                f'cannot read {source["input"]}: {exc}', returncode=EXIT_IO
            )
    try:
        return generate(
            source['recipe'], source.get('tensor_seed', 0),
            **source.get('recipe_params', {}),
        )
    except (TypeError, ValueError) as exc:
        raise CommandError(f'bad recipe: {exc}', returncode=EXIT_INVALID)


def source_from_options(options) -> dict:
    if options.get('input'):
        return {'input': str(options['input'])}
    return {
        'recipe': options['recipe'],
        'recipe_params': recipe_params(options),
        'tensor_seed': options.get('tensor_seed') or 0,
    }


def render_json(data) -> str:
    renderer = JSONRenderer()
    return renderer.render(data, renderer_context={'indent': 2}).decode()


def read_json(path):
    """
    Parse a JSON file; unreadable or malformed files exit with code 3.
    """
    try:
        payload = Path(path).read_bytes()
        return JSONParser().parse(io.BytesIO(payload))
    except (OSError, ParseError) as exc:
        raise CommandError(f'cannot read {path}: {exc}', returncode=EXIT_IO)


def write_text(path, text: str):
    try:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise CommandError(f'cannot write {path}: {exc}', returncode=EXIT_IO)


def check_fits(algorithm: str, cfg, dims):
    """
    Fail with exit code 2 when the ranks or sample sizes do not fit dims.
    """
    try:
        if resolve(algorithm, cfg).kind == 'deterministic':
            if len(dims) != cfg.ndim or any(
                r > n for r, n in zip(cfg.ranks, dims)
            ):
                raise ValueError(
                    f'ranks {cfg.ranks} do not fit a tensor of dims {dims}.'
                )
        else:
            cfg.check_dims(dims)
    except ValueError as exc:
        raise CommandError(str(exc), returncode=EXIT_INVALID)
