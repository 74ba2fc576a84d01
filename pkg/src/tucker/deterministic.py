"""
Deterministic truncated and sequentially truncated HOSVD.
"""

import logging

from linalg.kernels import econ_svd, tail_energy
from tensor.dense import as_tensor, mode_product, unfold
from tucker.complexity import ComplexityCounter
from tucker.config import resolve_order
from tucker.factorization import TuckerFactorization, project


logger = logging.getLogger(__name__)


def _check_ranks(dims, ranks):
    ranks = tuple(int(r) for r in ranks)
    if len(ranks) != len(dims):
        raise ValueError(f'{len(ranks)} ranks given for dims {dims}.')
    for k, (n, r) in enumerate(zip(dims, ranks)):
        if not 1 <= r <= n:
            raise ValueError(
                f'Rank {r} is out of range for mode {k} of size {n}.'
            )
    return ranks


def _leading_vectors(m, r, counter):
    svd = econ_svd(m)
    if counter is not None:
        counter.svd(*m.shape)
    return svd.u[:, :r], tail_energy(svd.s, r)


def thosvd(t, ranks, order=None,
           counter: ComplexityCounter = None) -> TuckerFactorization:
    """
    T-HOSVD: U_k holds the leading r_k left singular vectors of the mode-k
    unfolding of t, and the core is t contracted with every U_k^T.
    """
    t = as_tensor(t)
    ranks = _check_ranks(t.dims, ranks)
    factors = [
        _leading_vectors(unfold(t, k), r, counter)[0]
        for k, r in enumerate(ranks)
    ]
    order = resolve_order(order, t.ndim)
    core = project(t, factors, order)
    logger.debug('thosvd %s -> %s', t.dims, ranks)
    return TuckerFactorization(core, tuple(factors))


def sthosvd_with_residuals(t, ranks, order=None,
                           counter: ComplexityCounter = None):
    """
    ST-HOSVD that also returns the truncation residual of every step.

    The residuals are listed in processing order; for ST-HOSVD the squared
    reconstruction error is their sum of squares.
    """
    t = as_tensor(t)
    ranks = _check_ranks(t.dims, ranks)
    order = resolve_order(order, t.ndim)
    factors = [None] * t.ndim
    residuals = []
    core = t
    for k in order:
        u, residual = _leading_vectors(unfold(core, k), ranks[k], counter)
        factors[k] = u
        residuals.append(residual)
        core = mode_product(core, u.T, k)
    logger.debug('sthosvd %s -> %s in order %s', t.dims, ranks, order)
    return TuckerFactorization(core, tuple(factors)), residuals


def sthosvd(t, ranks, order=None,
            counter: ComplexityCounter = None) -> TuckerFactorization:
    """
    ST-HOSVD in the given processing order (default 0, 1, ..., d-1).
    """
    return sthosvd_with_residuals(t, ranks, order, counter)[0]
