"""
Probabilistic upper bounds on the Tucker approximation error.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass

import numpy as np

from bounds.params import BoundParams
from bounds.probability import phi_k, psi_k, shift_product_ratio
from linalg.kernels import tail_energy


logger = logging.getLogger(__name__)


class BoundHypothesisError(ValueError):
    """
    Raised when the failure probabilities do not sum to a value in (0, 1)
    or a realized shift reaches the squared tail singular value.
    """


@dataclass(frozen=True)
class BoundReport:
    """
    Bound value with the probability that it holds.
    """
    kind: str
    value: float
    failure_probability: float
    per_mode_probability: tuple[float, ...]

    @property
    def probability_floor(self) -> float:
        return 1.0 - self.failure_probability

    def as_dict(self) -> dict:
        report = asdict(self)
        report['per_mode_probability'] = list(self.per_mode_probability)
        report['probability_floor'] = self.probability_floor
        return report


def _check_hypothesis(probabilities, symbol):
    total = math.fsum(probabilities)
    if not 0.0 < total < 1.0:
        raise BoundHypothesisError(
            f'sum of {symbol}_k is {total:.6g}; the bound needs it in (0, 1).'
        )
    return total


def delta_terms(s, j: int, r: int) -> tuple[float, float]:
    """
    (sqrt(sum_{i=j+1..r} s_i^2), sqrt(sum_{i>r} s_i^2)) with 1-based i.
    """
    s = np.asarray(s, dtype=np.float64)
    head = math.fsum(s[j:r] ** 2)
    return math.sqrt(head), tail_energy(s, r)


def _sigma(s, i: int) -> float:
    # 1-based, zero past the end of the spectrum.
    return float(s[i - 1]) if i <= len(s) else 0.0


def mode_amplifiers(params: BoundParams, k: int) -> tuple[float, float]:
    """
    (f_k, g_k) for the T-HOSVD bound, using the realized shifts of mode k.
    """
    s = params.spectrum(k)
    j, r = params.j[k], params.ranks[k]
    size, beta, gamma = params.sample_sizes[k], params.beta[k], params.gamma[k]
    alphas = params.alphas[k]
    sigma_j = _sigma(s, j)
    if any(alpha >= sigma_j ** 2 for alpha in alphas) or sigma_j == 0.0:
        raise ValueError(
            f'Shift trace of mode {k} reaches '
            f'sigma_{j}^2 = {sigma_j ** 2:.6g}.'
        )
    head_ratio = shift_product_ratio(_sigma(s, j + 1), sigma_j, alphas)
    sigma_tail = _sigma(s, r + 1)
    if any(alpha > 0.0 and alpha >= sigma_tail ** 2 for alpha in alphas):
        raise BoundHypothesisError(
            f'Shift trace of mode {k} reaches '
            f'sigma_{r + 1}^2 = {sigma_tail ** 2:.6g}.'
        )
    tail_ratio = shift_product_ratio(sigma_tail, sigma_j, alphas)
    f = math.sqrt(2 * size) * gamma * head_ratio + 1.0
    # With j = r the cross term carries no shift ratio.
    cross = 1.0 if j == r else tail_ratio
    g = (
        math.sqrt(2 * min(params.n_hat(k), size)) * gamma * tail_ratio + 1.0
        + math.sqrt(2 * params.other_size(k) * size) * beta * gamma * cross
    )
    return f, g


def thosvd_error_bound(params: BoundParams) -> BoundReport:
    """
    Bound for randomized (shifted) T-HOSVD:
    2 * sum_k (f_k * Delta_j + g_k * Delta_r), holding with probability
    at least 1 - sum_k Phi_k.
    """
    probabilities = tuple(phi_k(params, k) for k in range(params.ndim))
    total = _check_hypothesis(probabilities, 'Phi')
    terms = []
    for k in range(params.ndim):
        f, g = mode_amplifiers(params, k)
        delta_j, delta_r = delta_terms(
            params.spectrum(k), params.j[k], params.ranks[k]
        )
        terms.append(f * delta_j + g * delta_r)
    value = 2.0 * math.fsum(terms)
    logger.debug('thosvd bound %.6e with probability >= %.6f',
                 value, 1.0 - total)
    return BoundReport('thosvd', value, total, probabilities)


def sthosvd_error_bound(params: BoundParams) -> BoundReport:
    """
    Rough bound for randomized (shifted) ST-HOSVD in params.order, with the
    shift ratios replaced by 1 and spectra of the input unfoldings; holds
    with probability at least 1 - sum_k Psi_k.
    """
    probabilities = tuple(psi_k(params, k) for k in range(params.ndim))
    total = _check_hypothesis(probabilities, 'Psi')
    terms = []
    for k in range(params.ndim):
        size, beta, gamma = (
            params.sample_sizes[k], params.beta[k], params.gamma[k]
        )
        delta_j, delta_r = delta_terms(
            params.spectrum(k), params.j[k], params.ranks[k]
        )
        width = params.shrunk_other_size(k)
        terms.append(
            (math.sqrt(2 * size) * gamma + 1.0) * delta_j
            + (math.sqrt(2 * min(params.n_tilde(k), size)) * gamma + 1.0)
            * delta_r
            + math.sqrt(2 * width * size) * beta * gamma * delta_r
        )
    value = 2.0 * math.fsum(terms)
    logger.debug('sthosvd bound %.6e with probability >= %.6f',
                 value, 1.0 - total)
    return BoundReport('sthosvd', value, total, probabilities)
