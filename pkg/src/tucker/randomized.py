"""
Randomized T-HOSVD and ST-HOSVD: the plain power scheme, the adaptive
shift, the holistic (compress then decompose) variants and PVE-controlled
iteration counts.

The T branch sketches the unfolding of the input tensor for every mode; the
ST branch sketches the unfolding of the partially truncated core, in
processing order. Mode k draws its sketch from a stream derived from the
sketch seed and k, so both branches see independent sketches per mode and
the same sketch for the same mode across solvers.
"""

from __future__ import annotations

import logging
import math

from sketch.generators import draw_sketch
from tensor.dense import as_tensor, mode_product, unfold
from tucker.complexity import ComplexityCounter
from tucker.config import SolverConfig
from tucker.deterministic import sthosvd, thosvd
from tucker.factorization import TuckerFactorization
from tucker.power import (
    ShiftTrace,
    orth_range,
    sketch_range,
    sketch_range_pve,
)


logger = logging.getLogger(__name__)

BRANCHES = ('t', 'st')


def mode_sketch(cfg: SolverConfig, k: int, dims):
    """
    Sketch for the mode-k unfolding of a tensor with the given dims.

    Composite families take their factor rows from the other modes in
    reverse, matching the column order of the unfolding.
    """
    other = [n for j, n in enumerate(dims) if j != k]
    spec = cfg.sketch.for_stream(k, factor_dims=tuple(reversed(other)))
    return draw_sketch(spec, math.prod(other), cfg.sample_sizes[k])


def _check_branch(branch):
    if branch not in BRANCHES:
        raise ValueError(f'Unknown branch {branch!r}.')


def _range(m, omega, cfg, k, counter, shift, pve):
    if pve:
        return sketch_range_pve(
            m, omega, cfg.ranks[k], cfg.pve, counter, mode=k
        )
    return sketch_range(m, omega, cfg.power, counter, shift=shift, mode=k)


def run_randomized(t, cfg: SolverConfig, branch: str, order=None,
                   shift: bool = False, pve: bool = False,
                   counter: ComplexityCounter = None):
    """
    Shared driver for the randomized solvers.

    Returns the factorization, the shift trace and the realized number of
    power iterations per mode.
    """
    _check_branch(branch)
    t = as_tensor(t)
    cfg.check_dims(t.dims)
    order = cfg.order(order)
    counter = counter if counter is not None else ComplexityCounter()
    if pve and cfg.pve is None:
        raise ValueError('PVE iteration needs a tolerance and q_max.')

    factors = [None] * t.ndim
    realized = [0] * t.ndim
    trace = ShiftTrace()
    core = t
    for k in order:
        source = t if branch == 't' else core
        omega = mode_sketch(cfg, k, source.dims)
        estimate = _range(
            unfold(source, k), omega, cfg, k, counter, shift, pve
        )
        u = estimate.basis[:, :cfg.ranks[k]]
        counter.matmul(cfg.ranks[k], core.dims[k], core.size // core.dims[k])
        core = mode_product(core, u.T, k)
        factors[k] = u
        realized[k] = estimate.iterations
        trace.modes.append(estimate.trace)
        logger.debug(
            'mode %d: %d iterations, final alpha %.6e',
            k, estimate.iterations, estimate.trace.final_alpha,
        )
    return TuckerFactorization(core, tuple(factors)), trace, tuple(realized)


def _check_unshifted(cfg):
    if cfg.shift_enabled:
        raise ValueError(
            'shift_enabled is set; use the shifted solver for this config.'
        )


def _check_shiftable(cfg):
    if cfg.power < 1:
        raise ValueError('The shifted power scheme needs power >= 1.')


def rand_thosvd(t, cfg: SolverConfig, order=None,
                counter: ComplexityCounter = None) -> TuckerFactorization:
    _check_unshifted(cfg)
    return run_randomized(t, cfg, 't', order, counter=counter)[0]


def rand_sthosvd(t, cfg: SolverConfig, order=None,
                 counter: ComplexityCounter = None) -> TuckerFactorization:
    _check_unshifted(cfg)
    return run_randomized(t, cfg, 'st', order, counter=counter)[0]


def shifted_rand_thosvd(t, cfg: SolverConfig, order=None,
                        counter: ComplexityCounter = None):
    """
    Randomized T-HOSVD with the adaptive shift.

    The shift is updated only when cfg.shift_enabled is set; otherwise it
    stays 0 and the factors equal those of rand_thosvd for the same sketch
    seed. Returns (factorization, shift trace).
    """
    _check_shiftable(cfg)
    f, trace, _ = run_randomized(
        t, cfg, 't', order, shift=cfg.shift_enabled, counter=counter
    )
    return f, trace


def shifted_rand_sthosvd(t, cfg: SolverConfig, order=None,
                         counter: ComplexityCounter = None):
    """
    Randomized ST-HOSVD with the adaptive shift; see shifted_rand_thosvd.
    """
    _check_shiftable(cfg)
    f, trace, _ = run_randomized(
        t, cfg, 'st', order, shift=cfg.shift_enabled, counter=counter
    )
    return f, trace


def pve_shifted_sthosvd(t, cfg: SolverConfig, order=None,
                        counter: ComplexityCounter = None):
    """
    Shifted randomized ST-HOSVD with per-mode iteration counts chosen by
    the PVE rule. Returns (factorization, realized q per mode, shift trace).
    """
    f, trace, realized = run_randomized(
        t, cfg, 'st', order, shift=True, pve=True, counter=counter
    )
    return f, realized, trace


def pve_shifted_thosvd(t, cfg: SolverConfig, order=None,
                       counter: ComplexityCounter = None):
    f, trace, realized = run_randomized(
        t, cfg, 't', order, shift=True, pve=True, counter=counter
    )
    return f, realized, trace


def run_holistic(t, cfg: SolverConfig, branch: str, order=None,
                 counter: ComplexityCounter = None):
    """
    Compress t to an l_1 x ... x l_d tensor B with range bases
    Q_k = orth(B_(k) Omega_k), decompose B deterministically to ranks r
    and lift U_k = Q_k V_k.

    The ST branch sketches the partially compressed B in processing order;
    the T branch sketches t itself for every mode. cfg.shift_enabled turns
    on the adaptive shift in the range finder.
    """
    _check_branch(branch)
    t = as_tensor(t)
    cfg.check_dims(t.dims)
    order = cfg.order(order)
    counter = counter if counter is not None else ComplexityCounter()
    if cfg.shift_enabled:
        _check_shiftable(cfg)

    bases = [None] * t.ndim
    trace = ShiftTrace()
    compressed = t
    for k in order:
        source = t if branch == 't' else compressed
        omega = mode_sketch(cfg, k, source.dims)
        estimate = orth_range(
            unfold(source, k), omega, cfg.power, counter,
            shift=cfg.shift_enabled, mode=k,
        )
        q = estimate.basis
        counter.matmul(
            q.shape[1], compressed.dims[k],
            compressed.size // compressed.dims[k],
        )
        compressed = mode_product(compressed, q.T, k)
        bases[k] = q
        trace.modes.append(estimate.trace)

    decompose = thosvd if branch == 't' else sthosvd
    inner = decompose(compressed, cfg.ranks, order=order, counter=counter)
    factors = tuple(q @ v for q, v in zip(bases, inner.factors))
    logger.debug('holistic %s: compressed to %s', branch, compressed.dims)
    return TuckerFactorization(inner.core, factors), trace


def holistic_rand_sthosvd(t, cfg: SolverConfig, order=None,
                          counter: ComplexityCounter = None
                          ) -> TuckerFactorization:
    return run_holistic(t, cfg, 'st', order, counter)[0]


def holistic_rand_thosvd(t, cfg: SolverConfig, order=None,
                         counter: ComplexityCounter = None
                         ) -> TuckerFactorization:
    return run_holistic(t, cfg, 't', order, counter)[0]
