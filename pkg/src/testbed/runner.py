"""
Seeded experiment grids over solvers and configurations.

A plan expands to cells (config, algorithm, trial), visited config-major.
Each cell draws its sketch seed from (master seed, config index, trial), so
every algorithm in a trial sees the same sketch seed and results do not
depend on scheduling.
"""

from __future__ import annotations

import csv
import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from sketch.generators import derive_seed
from tensor.dense import DenseTensor
from testbed.generators import generate
from tucker.config import SolverConfig
from tucker.factorization import relative_error
from tucker.registry import ALGORITHMS, solve


logger = logging.getLogger(__name__)

CSV_HEADER = (
    'algorithm', 'recipe', 'r', 's', 'q', 'trial', 'seed', 're', 'seconds',
    'alpha_final',
)


@dataclass(frozen=True)
class ExperimentPlan:
    """
    Tensor recipe, solvers and configuration grid of one experiment.

    The tensor is built once from (recipe, recipe_params, tensor_seed) and
    shared read-only by every cell.
    """
    recipe: str
    algorithms: tuple[str, ...]
    configs: tuple[SolverConfig, ...]
    trials: int = 1
    seed: int = 0
    recipe_params: dict = field(default_factory=dict)
    tensor_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'algorithms', tuple(self.algorithms))
        object.__setattr__(self, 'configs', tuple(self.configs))
        if self.trials < 1:
            raise ValueError(f'Need at least one trial, got {self.trials}.')
        if not self.algorithms or not self.configs:
            raise ValueError('A plan needs algorithms and configurations.')
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise ValueError(f'Unknown algorithms: {", ".join(unknown)}.')

    def cells(self):
        """
        Yield (config index, algorithm, trial) in report order.
        """
        return itertools.product(
            range(len(self.configs)), self.algorithms, range(self.trials)
        )

    def cell_seed(self, config_index: int, trial: int) -> int:
        return derive_seed(self.seed, config_index, trial)

    def build_tensor(self) -> DenseTensor:
        return generate(self.recipe, self.tensor_seed, **self.recipe_params)


def expand_grid(ranks, oversampling=(10,), power=(1,), **common):
    """
    SolverConfigs for every combination of ranks, oversampling and power.
    """
    return tuple(
        SolverConfig(ranks=r, oversampling=s, power=q, **common)
        for r, s, q in itertools.product(ranks, oversampling, power)
    )


@dataclass(frozen=True)
class RunReport:
    """
    Outcome of one cell; re and seconds are None when the cell failed.
    """
    algorithm: str
    recipe: str
    config_index: int
    config: SolverConfig
    trial: int
    seed: int
    re: float | None = None
    seconds: float | None = None
    counters: dict = field(default_factory=dict)
    realized_q: tuple[int, ...] | None = None
    alpha_final: tuple[float, ...] = ()
    failed: bool = False
    error: str = ''

    def as_dict(self) -> dict:
        return {
            'algorithm': self.algorithm,
            'recipe': self.recipe,
            'ranks': list(self.config.ranks),
            'oversampling': list(self.config.oversampling),
            'power': self.config.power,
            'realized_q': (
                None if self.realized_q is None else list(self.realized_q)
            ),
            'trial': self.trial,
            'seed': self.seed,
            're': self.re,
            'seconds': self.seconds,
            'alpha_final': list(self.alpha_final),
            'counters': dict(self.counters),
            'failed': self.failed,
            'error': self.error,
        }


def run_cell(t, plan: ExperimentPlan, config_index: int, algorithm: str,
             trial: int) -> RunReport:
    """
    Solve one cell, turning any solver error into a flagged report.
    """
    seed = plan.cell_seed(config_index, trial)
    cfg = plan.configs[config_index]
    cfg = cfg.with_options(sketch=replace(cfg.sketch, seed=seed))
    report = dict(
        algorithm=algorithm, recipe=plan.recipe, config_index=config_index,
        config=cfg, trial=trial, seed=seed,
    )
    try:
        outcome = solve(algorithm, t, cfg)
        re = relative_error(t, outcome.factorization)
    except Exception as exc:
        logger.warning('%s trial %d (config %d) failed: %s',
                       algorithm, trial, config_index, exc)
        return RunReport(**report, failed=True, error=str(exc))
    return RunReport(
        **report,
        re=re,
        seconds=outcome.seconds,
        counters=outcome.counter.as_dict(),
        realized_q=outcome.realized_q,
        alpha_final=outcome.final_alphas,
    )


def run_experiment(plan: ExperimentPlan, tensor=None,
                   max_workers: int = 1) -> list[RunReport]:
    """
    Run every cell of the plan, at most max_workers at a time.

    Reports come back in cell order whatever the completion order.
    """
    t = plan.build_tensor() if tensor is None else tensor
    cells = list(plan.cells())
    logger.info('running %d cells on %s with %d workers',
                len(cells), t.dims, max_workers)
    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as executor:
        reports = list(executor.map(
            lambda cell: run_cell(t, plan, *cell), cells
        ))
    failed = sum(report.failed for report in reports)
    if failed:
        logger.warning('%d of %d cells failed', failed, len(reports))
    return reports


@dataclass(frozen=True)
class Summary:
    """
    Statistics of one (config, algorithm) cell over its trials.
    """
    algorithm: str
    config_index: int
    trials: int
    failed: int
    re_mean: float
    re_median: float
    re_min: float
    re_max: float
    seconds_mean: float
    seconds_median: float


def _stats(values):
    if not values:
        return (math.nan,) * 4
    return (
        math.fsum(values) / len(values),
        float(np.median(values)),
        min(values),
        max(values),
    )


def aggregate(reports) -> list[Summary]:
    """
    Mean, median, min and max over the successful trials of every cell.

    The result does not depend on the order of the reports.
    """
    groups = {}
    for report in reports:
        key = (report.config_index, report.algorithm)
        groups.setdefault(key, []).append(report)
    summaries = []
    for (config_index, algorithm), group in sorted(groups.items()):
        done = [r for r in group if not r.failed]
        re = _stats([r.re for r in done])
        seconds = _stats([r.seconds for r in done])
        summaries.append(Summary(
            algorithm=algorithm,
            config_index=config_index,
            trials=len(group),
            failed=len(group) - len(done),
            re_mean=re[0],
            re_median=re[1],
            re_min=re[2],
            re_max=re[3],
            seconds_mean=seconds[0],
            seconds_median=seconds[1],
        ))
    return summaries


def _joined(values, sep):
    return sep.join(str(v) for v in values)


def csv_row(report: RunReport, no_timing: bool = False) -> list[str]:
    cfg = report.config
    q = report.realized_q if report.realized_q else (cfg.power,)
    return [
        report.algorithm,
        report.recipe,
        _joined(cfg.ranks, 'x'),
        _joined(cfg.oversampling, 'x'),
        _joined(q, 'x'),
        str(report.trial),
        str(report.seed),
        '' if report.re is None else '%.17g' % report.re,
        '' if no_timing or report.seconds is None
        else '%.6f' % report.seconds,
        ';'.join('%.17g' % a for a in report.alpha_final),
    ]


def write_csv(reports, stream, no_timing: bool = False):
    """
    Write one row per report; fixed seeds and no_timing give identical bytes.
    """
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(CSV_HEADER)
    for report in reports:
        writer.writerow(csv_row(report, no_timing=no_timing))
