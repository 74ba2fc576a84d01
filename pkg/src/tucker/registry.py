"""
Solver lookup by command-line id, with one outcome shape for every solver.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass

from tensor.dense import as_tensor
from tucker.complexity import ComplexityCounter
from tucker.config import PveControl, SolverConfig
from tucker.deterministic import sthosvd, thosvd
from tucker.factorization import TuckerFactorization
from tucker.power import ShiftTrace
from tucker.randomized import run_holistic, run_randomized


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Algorithm:
    """
    How a command-line id maps onto a solver family.

    kind is one of 'deterministic', 'randomized', 'holistic' or 'pve'.
    """
    id: str
    kind: str
    branch: str
    shift: bool = False


ALGORITHMS = {
    a.id: a for a in (
        Algorithm('thosvd', 'deterministic', 't'),
        Algorithm('sthosvd', 'deterministic', 'st'),
        Algorithm('rand-thosvd', 'randomized', 't'),
        Algorithm('rand-sthosvd', 'randomized', 'st'),
        Algorithm('shifted-thosvd', 'randomized', 't', shift=True),
        Algorithm('shifted-sthosvd', 'randomized', 'st', shift=True),
        Algorithm('holistic', 'holistic', 'st'),
        Algorithm('holistic-shifted', 'holistic', 'st', shift=True),
        Algorithm('holistic-thosvd', 'holistic', 't'),
        Algorithm('holistic-thosvd-shifted', 'holistic', 't', shift=True),
        Algorithm('pve', 'pve', 'st', shift=True),
        Algorithm('pve-thosvd', 'pve', 't', shift=True),
    )
}

# A PVE tolerance on a shifted randomized solver selects its PVE variant.
_PVE_VARIANTS = {'shifted-sthosvd': 'pve', 'shifted-thosvd': 'pve-thosvd'}


@dataclass
class SolverOutcome:
    algorithm: str
    factorization: TuckerFactorization
    trace: ShiftTrace | None
    realized_q: tuple[int, ...] | None
    counter: ComplexityCounter
    seconds: float

    @property
    def final_alphas(self) -> tuple[float, ...]:
        if self.trace is None:
            return ()
        return self.trace.final_alphas()


def resolve(algorithm: str, cfg: SolverConfig) -> Algorithm:
    if algorithm not in ALGORITHMS:
        raise ValueError(
            f'Unknown algorithm {algorithm!r}; choose from '
            f'{", ".join(ALGORITHMS)}.'
        )
    if cfg.pve is not None and algorithm in _PVE_VARIANTS:
        algorithm = _PVE_VARIANTS[algorithm]
    return ALGORITHMS[algorithm]


def prepare_config(algo: Algorithm, cfg: SolverConfig) -> SolverConfig:
    """
    Align shift and PVE settings of cfg with the selected algorithm.
    """
    changes = {'shift_enabled': algo.shift}
    if algo.kind == 'pve' and cfg.pve is None:
        changes['pve'] = PveControl()
    return cfg.with_options(**changes)


def _run(algo, t, cfg, order, counter):
    if algo.kind == 'deterministic':
        decompose = thosvd if algo.branch == 't' else sthosvd
        f = decompose(t, cfg.ranks, order=cfg.order(order), counter=counter)
        return f, None, None
    if algo.kind == 'holistic':
        f, trace = run_holistic(t, cfg, algo.branch, order, counter)
        return f, trace, (cfg.power,) * cfg.ndim
    if algo.shift and cfg.power < 1 and algo.kind == 'randomized':
        raise ValueError('The shifted power scheme needs power >= 1.')
    return run_randomized(
        t, cfg, algo.branch, order, shift=algo.shift,
        pve=algo.kind == 'pve', counter=counter,
    )


def solve(algorithm: str, t, cfg: SolverConfig, order=None) -> SolverOutcome:
    """
    Run the solver registered under `algorithm` and time it.
    """
    algo = resolve(algorithm, cfg)
    cfg = prepare_config(algo, cfg)
    t = as_tensor(t)
    counter = ComplexityCounter()
    start = time.perf_counter()
    f, trace, realized = _run(algo, t, cfg, order, counter)
    seconds = time.perf_counter() - start
    logger.info(
        '%s on %s with ranks %s finished in %.3fs',
        algo.id, t.dims, cfg.ranks, seconds,
    )
    return SolverOutcome(
        algorithm=algo.id,
        factorization=f,
        trace=trace,
        realized_q=realized,
        counter=counter,
        seconds=seconds,
    )
