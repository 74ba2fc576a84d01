"""
Failure probabilities of the Gaussian range finder.

Powers such as (e / (m * beta)) ** m are evaluated through logarithms so
that large exponents underflow to 0 or overflow to inf instead of raising.
"""

import math

import numpy as np

from bounds.params import BoundParams


def _power(log_base: float, exponent: float) -> float:
    with np.errstate(over='ignore', under='ignore'):
        return float(np.exp(exponent * log_base))


def smallest_singular_value_tail(n: int, ell: int, beta: float) -> float:
    """
    Probability bound that an ell x n Gaussian matrix (ell <= n) has smallest
    singular value below 1 / (sqrt(n) * beta).
    """
    if not 1 <= ell <= n:
        raise ValueError(f'Need 1 <= ell <= n, got ell={ell}, n={n}.')
    if beta <= 1.0:
        raise ValueError(f'beta must exceed 1, got {beta}.')
    m = n - ell + 1
    return _power(1.0 - math.log(m * beta), m) / math.sqrt(2 * math.pi * m)


def largest_singular_value_tail(n: int, gamma: float) -> float:
    """
    Probability bound that an ell x n Gaussian matrix (ell < n) has largest
    singular value above sqrt(2 n) * gamma.
    """
    if n < 1:
        raise ValueError(f'n must be positive, got {n}.')
    if gamma <= 1.0:
        raise ValueError(f'gamma must exceed 1, got {gamma}.')
    g2 = gamma ** 2
    scale = 4 * (g2 - 1) * math.sqrt(math.pi * n * g2)
    return _power(math.log(2 * g2) - (g2 - 1), n) / scale


def _wide_tail(n: int, gamma: float) -> float:
    # Fourth term: the base has e^{gamma^2} - 1 in the denominator.
    g2 = gamma ** 2
    scale = 4 * (g2 - 1) * math.sqrt(math.pi * n * g2)
    log_expm1 = g2 + math.log(-math.expm1(-g2))
    return _power(math.log(2 * g2) - log_expm1, n) / scale


def _floor(tail: float) -> float:
    floor = 1.0 - tail
    if floor < 0.0:
        raise ValueError(
            f'Parameters outside the valid domain: floor {floor:.3e} < 0.'
        )
    return floor


def largest_singular_value_floor(n: int, gamma: float) -> float:
    """
    Probability floor for sigma_max <= sqrt(2 n) * gamma; raises ValueError
    when the floor would be negative.
    """
    return _floor(largest_singular_value_tail(n, gamma))


def smallest_singular_value_floor(n: int, ell: int, beta: float) -> float:
    """
    Probability floor for sigma_min >= 1 / (sqrt(n) * beta); raises
    ValueError when the floor would be negative.
    """
    return _floor(smallest_singular_value_tail(n, ell, beta))


def gaussian_extreme_singular_tail(n: int, ell: int = None,
                                   beta: float = None,
                                   gamma: float = None) -> float:
    """
    Probability floor for one extreme singular value of a Gaussian matrix.

    Pass gamma for the largest singular value (only n matters) or beta
    with ell for the smallest.
    """
    if (beta is None) == (gamma is None):
        raise ValueError('Pass exactly one of beta and gamma.')
    if gamma is not None:
        return largest_singular_value_floor(n, gamma)
    if ell is None:
        raise ValueError('The smallest singular value floor needs ell.')
    return smallest_singular_value_floor(n, ell, beta)


def _four_terms(params: BoundParams, k: int, n_bar: int, width: int):
    size, j, r = params.sample_sizes[k], params.j[k], params.ranks[k]
    beta, gamma = params.beta[k], params.gamma[k]
    terms = [
        smallest_singular_value_tail(size, j, beta),
        largest_singular_value_tail(size, gamma),
        largest_singular_value_tail(min(n_bar, size), gamma),
        _wide_tail(width, gamma),
    ]
    if j == r:
        # No f_k contribution, so its sigma_max event is not needed.
        terms[1] = 0.0
    return terms


def phi_k(params: BoundParams, k: int) -> float:
    """
    Failure probability of mode k in the randomized T-HOSVD bound.
    """
    return math.fsum(
        _four_terms(params, k, params.n_hat(k), params.other_size(k))
    )


def psi_k(params: BoundParams, k: int) -> float:
    """
    Failure probability of mode k in the randomized ST-HOSVD bound, with
    dimension products of the partially truncated core.
    """
    return math.fsum(
        _four_terms(params, k, params.n_tilde(k), params.shrunk_other_size(k))
    )


def shifted_ratio(sigma_i: float, sigma_j: float, alpha: float) -> float:
    """
    (sigma_i - alpha) / (sigma_j - alpha) for Gram eigenvalues.
    """
    if alpha >= sigma_j:
        raise ValueError(
            f'Shift {alpha} must stay below the reference value {sigma_j}.'
        )
    return (sigma_i - alpha) / (sigma_j - alpha)


def shift_product_ratio(sigma_i: float, sigma_j: float, alphas) -> float:
    """
    prod_t (sigma_i^2 - alpha_t) / (sigma_j^2 - alpha_t) over a shift trace,
    for singular values sigma_i and sigma_j.
    """
    ratio = 1.0
    for alpha in alphas:
        ratio *= shifted_ratio(sigma_i ** 2, sigma_j ** 2, alpha)
    return ratio
