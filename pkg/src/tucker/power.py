"""
Sketched range finders with plain, shifted and PVE-controlled power
iterations.

Every kernel works on the n x l iterate only: the unfolding m is applied as
m @ (m.T @ q) and the SVD is taken of that n x l product.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from linalg.kernels import econ_svd, economy_q
from tucker.complexity import ComplexityCounter
from tucker.config import PveControl


logger = logging.getLogger(__name__)

# The shift update is skipped when sigma_l of the iterate is below this
# fraction of sigma_1.
DEGENERATE_RATIO = 1e-14

# Absolute floor of the PVE test, relative to the leading estimate.
PVE_FLOOR = 1e-12


@dataclass(frozen=True)
class ShiftRecord:
    """
    One power iteration: the shift applied and sigma_l of the iterate.
    """
    iteration: int
    alpha: float
    sigma_min: float


@dataclass
class ModeShiftTrace:
    mode: int
    records: list[ShiftRecord] = field(default_factory=list)
    final_alpha: float = 0.0

    @property
    def alphas(self) -> list[float]:
        return [rec.alpha for rec in self.records]

    def as_dict(self) -> dict:
        return {
            'mode': self.mode,
            'final_alpha': self.final_alpha,
            'records': [
                {
                    'iteration': rec.iteration,
                    'alpha': rec.alpha,
                    'sigma_min': rec.sigma_min,
                }
                for rec in self.records
            ],
        }


@dataclass
class ShiftTrace:
    """
    Per-mode shift histories, in processing order.
    """
    modes: list[ModeShiftTrace] = field(default_factory=list)

    def for_mode(self, k: int) -> ModeShiftTrace:
        for trace in self.modes:
            if trace.mode == k:
                return trace
        raise KeyError(k)

    def final_alphas(self) -> tuple[float, ...]:
        """
        Last shift of every mode, ordered by mode index.
        """
        return tuple(
            trace.final_alpha
            for trace in sorted(self.modes, key=lambda t: t.mode)
        )

    def alpha_sequences(self) -> dict[int, list[float]]:
        """
        Shifts used in each iteration followed by the final shift, per mode.
        """
        return {
            trace.mode: trace.alphas + [trace.final_alpha]
            for trace in self.modes
        }

    def as_list(self) -> list[dict]:
        return [trace.as_dict() for trace in self.modes]

    @classmethod
    def from_list(cls, items) -> ShiftTrace:
        """
        Rebuild a trace from the output of as_list.
        """
        modes = []
        for item in items:
            records = [
                ShiftRecord(
                    iteration=int(rec['iteration']),
                    alpha=float(rec['alpha']),
                    sigma_min=float(rec['sigma_min']),
                )
                for rec in item.get('records', [])
            ]
            modes.append(ModeShiftTrace(
                mode=int(item['mode']),
                records=records,
                final_alpha=float(item.get('final_alpha', 0.0)),
            ))
        return cls(modes)


@dataclass
class RangeEstimate:
    """
    Orthonormal n x l basis from a range finder and how it was obtained.
    """
    basis: np.ndarray
    iterations: int
    trace: ModeShiftTrace


def _apply_gram(m, q, alpha, counter):
    rows, cols = m.shape
    size = q.shape[1]
    counter.matmul(cols, rows, size)
    counter.matmul(rows, cols, size)
    z = m @ (m.T @ q)
    if alpha != 0.0:
        z = z - alpha * q
    return z


def _next_alpha(alpha, svd, size, mode):
    sigma_min = svd.s[size - 1]
    if sigma_min < DEGENERATE_RATIO * svd.s[0]:
        logger.debug(
            'mode %d: sigma_l %.3e is degenerate, shift left at %.3e',
            mode, sigma_min, alpha,
        )
        return alpha
    if sigma_min > alpha:
        return (sigma_min + alpha) / 2.0
    return alpha


def _sketch(m, omega, counter):
    rows, cols = m.shape
    if omega.shape[0] != cols:
        raise ValueError(
            f'Sketch with {omega.shape[0]} rows cannot multiply an '
            f'unfolding with {cols} columns.'
        )
    size = omega.shape[1]
    if size > min(rows, cols):
        raise ValueError(
            f'Sample size {size} exceeds min({rows}, {cols}).'
        )
    counter.matmul(rows, cols, size)
    return m @ omega


def _initial_basis(m, omega, counter):
    y = _sketch(m, omega, counter)
    counter.svd(*y.shape)
    return econ_svd(y).u


def _qr_basis(y, counter):
    counter.qr(*y.shape)
    return economy_q(y)


def _power_passes(m, q, power, counter, shift, mode) -> RangeEstimate:
    # SVD of every iterate; the shift update needs its sigma_l.
    size = q.shape[1]
    trace = ModeShiftTrace(mode=mode)
    alpha = 0.0
    for t in range(1, power + 1):
        svd = econ_svd(_apply_gram(m, q, alpha, counter))
        counter.svd(m.shape[0], size)
        q = svd.u
        trace.records.append(ShiftRecord(t, alpha, float(svd.s[size - 1])))
        if shift:
            alpha = _next_alpha(alpha, svd, size, mode)
            logger.debug('mode %d iteration %d: alpha=%.6e', mode, t, alpha)
    trace.final_alpha = float(alpha)
    return RangeEstimate(basis=q, iterations=power, trace=trace)


def sketch_range(m, omega, power: int, counter: ComplexityCounter = None,
                 shift: bool = False, mode: int = 0) -> RangeEstimate:
    """
    Range basis of m from the sketch m @ omega followed by `power` power
    iterations, shifting by a running estimate of sigma_l when `shift`.

    With shift off the shift stays at 0 and no subtraction takes place, so
    the result is the plain power scheme bit for bit.
    """
    m = np.asarray(m, dtype=np.float64)
    counter = counter if counter is not None else ComplexityCounter()
    if shift and power < 1:
        raise ValueError(
            'The shifted power scheme needs at least one iteration.'
        )
    q = _initial_basis(m, omega, counter)
    return _power_passes(m, q, power, counter, shift, mode)


def orth_range(m, omega, power: int, counter: ComplexityCounter = None,
               shift: bool = False, mode: int = 0) -> RangeEstimate:
    """
    Range basis Q from a QR of m @ omega refined by `power` power
    iterations.

    Plain passes re-orthonormalize m m^T Q by unpivoted QR and record no
    shifts. Shifted passes take an SVD of the iterate as in sketch_range.
    The basis keeps all l columns when the sketch is rank deficient.
    """
    m = np.asarray(m, dtype=np.float64)
    counter = counter if counter is not None else ComplexityCounter()
    if shift and power < 1:
        raise ValueError(
            'The shifted power scheme needs at least one iteration.'
        )
    q = _qr_basis(_sketch(m, omega, counter), counter)
    if shift:
        return _power_passes(m, q, power, counter, True, mode)
    for _ in range(power):
        q = _qr_basis(_apply_gram(m, q, 0.0, counter), counter)
    return RangeEstimate(
        basis=q, iterations=power, trace=ModeShiftTrace(mode=mode)
    )


def sketch_range_pve(m, omega, rank: int, pve: PveControl,
                     counter: ComplexityCounter = None,
                     mode: int = 0) -> RangeEstimate:
    """
    Shifted power iterations stopped by the PVE rule.

    After each iteration the shifted singular-value estimates
    sigma = diag(Sigma) + alpha are compared with those of the previous
    iteration (zero before the first); iteration stops once the top `rank`
    estimates move by at most max(tol * sigma_{rank+1}, PVE_FLOOR * sigma_1),
    or after q_max iterations.
    """
    m = np.asarray(m, dtype=np.float64)
    counter = counter if counter is not None else ComplexityCounter()
    q = _initial_basis(m, omega, counter)
    size = q.shape[1]
    if rank > size:
        raise ValueError(f'Rank {rank} exceeds sample size {size}.')
    trace = ModeShiftTrace(mode=mode)
    alpha = 0.0
    previous = np.zeros(size)
    iterations = 0
    while iterations < pve.q_max:
        iterations += 1
        svd = econ_svd(_apply_gram(m, q, alpha, counter))
        counter.svd(m.shape[0], size)
        q = svd.u
        trace.records.append(
            ShiftRecord(iterations, alpha, float(svd.s[size - 1]))
        )
        sigma = svd.s + alpha
        change = float(np.max(np.abs(sigma[:rank] - previous[:rank])))
        next_sigma = sigma[rank] if rank < size else 0.0
        threshold = max(pve.tol * next_sigma, PVE_FLOOR * sigma[0])
        if change <= threshold:
            break
        alpha = _next_alpha(alpha, svd, size, mode)
        previous = sigma
    else:
        logger.info('mode %d: PVE rule not met after %d iterations',
                    mode, pve.q_max)
    logger.debug('mode %d: PVE stopped after %d iterations', mode, iterations)
    trace.final_alpha = float(alpha)
    return RangeEstimate(basis=q, iterations=iterations, trace=trace)
