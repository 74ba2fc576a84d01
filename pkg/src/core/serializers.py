"""
Serializers for command input, run records and decompose summaries.
"""

from django.conf import settings

from rest_framework import serializers

from core.models import RunRecord
from sketch.generators import SketchFamily, SketchSpec
from testbed.generators import RECIPES
from testbed.runner import ExperimentPlan, expand_grid
from tucker.config import PveControl, SolverConfig
from tucker.registry import ALGORITHMS, resolve


SKETCH_CHOICES = [family.value for family in SketchFamily] + [
    'kr-gaussian', 'kr-uniform',
]

MAX_SEED = 2 ** 63 - 1


class RanksField(serializers.Field):
    """
    Ranks given as a list of integers or as a string like '5x5x5'.
    """
    default_error_messages = {
        'invalid': 'Expected positive integers or a string like "5x5x5".',
    }

    def to_internal_value(self, data):
        if isinstance(data, str):
            data = data.replace(',', 'x').split('x')
        try:
            ranks = [int(r) for r in data]
        except (TypeError, ValueError):
            self.fail('invalid')
        if not ranks or any(r < 1 for r in ranks):
            self.fail('invalid')
        return ranks

    def to_representation(self, value):
        return list(value)


def _solver_defaults():
    return settings.TUCKER


def _pve_control(attrs, algorithm=None):
    tol = attrs.get('pve_tol')
    q_max = attrs.get('qmax') or _solver_defaults()['PVE_QMAX']
    if tol is None and algorithm is not None and algorithm.startswith('pve'):
        tol = _solver_defaults()['PVE_TOL']
    if tol is None:
        return None
    return PveControl(tol=tol, q_max=q_max)


def _processing_order(attrs):
    # The command line counts modes from 1.
    order = attrs.get('order')
    return None if not order else tuple(k - 1 for k in order)


def _sketch(attrs):
    return SketchSpec(
        attrs.get('sketch') or _solver_defaults()['SKETCH'],
        seed=attrs['seed'],
    )


class SolverOptionsSerializer(serializers.Serializer):
    """
    Serializer for the solver options of a single run.
    """
    algorithm = serializers.ChoiceField(choices=list(ALGORITHMS))
    ranks = RanksField()
    oversample = serializers.ListField(
        child=serializers.IntegerField(min_value=0), required=False,
        allow_null=True,
    )
    power = serializers.IntegerField(
        min_value=0, required=False, allow_null=True,
    )
    order = serializers.ListField(
        child=serializers.IntegerField(min_value=1), required=False,
        allow_null=True,
    )
    sketch = serializers.ChoiceField(
        choices=SKETCH_CHOICES, required=False, allow_null=True,
    )
    pve_tol = serializers.FloatField(required=False, allow_null=True)
    qmax = serializers.IntegerField(
        min_value=1, required=False, allow_null=True,
    )
    seed = serializers.IntegerField(min_value=0, max_value=MAX_SEED)

    def validate(self, attrs):
        """
        Build the SolverConfig and check it against the algorithm.
        """
        ranks = attrs['ranks']
        oversample = attrs.get('oversample')
        if not oversample:
            oversample = [_solver_defaults()['OVERSAMPLING']]
        if len(oversample) == 1:
            oversample = oversample * len(ranks)
        power = attrs.get('power')
        if power is None:
            power = _solver_defaults()['POWER']
        try:
            config = SolverConfig(
                ranks=tuple(ranks),
                oversampling=tuple(oversample),
                power=power,
                pve=_pve_control(attrs, attrs['algorithm']),
                processing_order=_processing_order(attrs),
                sketch=_sketch(attrs),
            )
            resolve(attrs['algorithm'], config)
        except ValueError as exc:
            raise serializers.ValidationError(str(exc))

        attrs['config'] = config
        return attrs


class ExperimentPlanSerializer(serializers.Serializer):
    """
    Serializer for an experiment plan, from a plan file or bench flags.
    """
    recipe = serializers.ChoiceField(choices=RECIPES)
    recipe_params = serializers.DictField(required=False, default=dict)
    tensor_seed = serializers.IntegerField(
        min_value=0, max_value=MAX_SEED, required=False, default=0,
    )
    algorithms = serializers.ListField(
        child=serializers.ChoiceField(choices=list(ALGORITHMS)),
        min_length=1,
    )
    ranks = serializers.ListField(child=RanksField(), min_length=1)
    oversample = serializers.ListField(
        child=serializers.IntegerField(min_value=0), required=False,
        allow_null=True,
    )
    power = serializers.ListField(
        child=serializers.IntegerField(min_value=0), required=False,
        allow_null=True,
    )
    order = serializers.ListField(
        child=serializers.IntegerField(min_value=1), required=False,
        allow_null=True,
    )
    sketch = serializers.ChoiceField(
        choices=SKETCH_CHOICES, required=False, allow_null=True,
    )
    pve_tol = serializers.FloatField(required=False, allow_null=True)
    qmax = serializers.IntegerField(
        min_value=1, required=False, allow_null=True,
    )
    trials = serializers.IntegerField(min_value=1, required=False, default=1)
    seed = serializers.IntegerField(min_value=0, max_value=MAX_SEED)

    def validate(self, attrs):
        """
        Expand the grid and build the ExperimentPlan.
        """
        defaults = _solver_defaults()
        try:
            configs = expand_grid(
                [tuple(r) for r in attrs['ranks']],
                oversampling=attrs.get('oversample')
                or [defaults['OVERSAMPLING']],
                power=attrs.get('power') or [defaults['POWER']],
                pve=_pve_control(attrs),
                processing_order=_processing_order(attrs),
                sketch=_sketch(attrs),
            )
            plan = ExperimentPlan(
                recipe=attrs['recipe'],
                algorithms=tuple(attrs['algorithms']),
                configs=configs,
                trials=attrs['trials'],
                seed=attrs['seed'],
                recipe_params=dict(attrs['recipe_params']),
                tensor_seed=attrs['tensor_seed'],
            )
        except ValueError as exc:
            raise serializers.ValidationError(str(exc))

        attrs['plan'] = plan
        return attrs


class RunRecordSerializer(serializers.ModelSerializer):
    """
    Serializer for recorded runs, keyed like RunReport.as_dict.
    """
    re = serializers.FloatField(
        source='relative_error', required=False, allow_null=True,
    )

    class Meta:
        model = RunRecord
        fields = [
            'id',
            'algorithm',
            'recipe',
            'ranks',
            'oversampling',
            'power',
            'realized_q',
            'trial',
            'seed',
            're',
            'seconds',
            'alpha_final',
            'shift_trace',
            'counters',
            'failed',
            'error',
            'created',
        ]
        read_only_fields = ['id', 'created']


class DecomposeSummarySerializer(serializers.Serializer):
    """
    Serializer for the JSON summary of one decomposition.

    `source` names the input: {'input': path} or {'recipe': id,
    'recipe_params': {...}, 'tensor_seed': n}. Modes in `order` count
    from 1.
    """
    algorithm = serializers.ChoiceField(choices=list(ALGORITHMS))
    source = serializers.DictField()
    dims = serializers.ListField(child=serializers.IntegerField(min_value=1))
    ranks = serializers.ListField(child=serializers.IntegerField(min_value=1))
    oversampling = serializers.ListField(
        child=serializers.IntegerField(min_value=0)
    )
    power = serializers.IntegerField(min_value=0)
    order = serializers.ListField(child=serializers.IntegerField(min_value=1))
    sketch = serializers.ChoiceField(choices=SKETCH_CHOICES)
    seed = serializers.IntegerField(min_value=0, max_value=MAX_SEED)
    realized_q = serializers.ListField(
        child=serializers.IntegerField(min_value=0), allow_null=True,
    )
    re = serializers.FloatField(min_value=0.0)
    seconds = serializers.FloatField(min_value=0.0)
    alpha_final = serializers.ListField(child=serializers.FloatField())
    shift_trace = serializers.ListField(child=serializers.DictField())
    counters = serializers.DictField()

    def validate(self, attrs):
        """
        Check that per-mode lists agree with the tensor order.
        """
        d = len(attrs['dims'])
        for name in ('ranks', 'oversampling', 'order'):
            if len(attrs[name]) != d:
                raise serializers.ValidationError(
                    f'{name} has {len(attrs[name])} entries for {d} modes.'
                )
        if sorted(attrs['order']) != list(range(1, d + 1)):
            raise serializers.ValidationError(
                f'order {attrs["order"]} is not a permutation of 1..{d}.'
            )
        source = attrs['source']
        if ('input' in source) == ('recipe' in source):
            raise serializers.ValidationError(
                'source needs exactly one of input and recipe.'
            )
        return attrs
