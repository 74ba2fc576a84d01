"""
Synthetic test tensors.

Recipe A (and its unequal-mode variant C) is a weighted sum of rank-one
terms built from sparse random vectors, with a large weight gap after the
first `n_terms_big` terms. Recipe B places a decaying vector on the
superdiagonal and rotates every mode by a random orthogonal matrix, so its
unfolding spectra are known exactly.
"""

import logging
import math

import numpy as np
from scipy.special import expit

from linalg.kernels import orth
from sketch.generators import make_generator
from tensor.dense import DenseTensor, multi_mode_product, tendiag


logger = logging.getLogger(__name__)

DECAYS = {
    'slow': lambda i: 1.0 / i ** 2,
    'fast': lambda i: np.exp(-i / 7.0),
    's-shape': lambda i: 0.001 + expit(29.0 - i),
}

RECIPES = ('a', 'b', 'c')


def term_weights(n_terms: int, n_terms_big: int, gamma: float) -> np.ndarray:
    """
    gamma / i for the first n_terms_big terms and 1 / i after them.
    """
    i = np.arange(1, n_terms + 1, dtype=np.float64)
    return np.where(i <= n_terms_big, gamma, 1.0) / i


def sparse_factor(n: int, n_terms: int, sparsity: float, rng) -> np.ndarray:
    """
    n x n_terms matrix whose columns have ceil(sparsity * n) nonzeros.

    Supports are drawn without replacement; values are standard normal.
    """
    nnz = max(1, math.ceil(round(sparsity * n, 9)))
    x = np.zeros((n, n_terms))
    for i in range(n_terms):
        support = rng.choice(n, size=nnz, replace=False)
        x[support, i] = rng.standard_normal(nnz)
    return x


def _check_sparse_recipe(dims, n_terms, n_terms_big, gamma, sparsity):
    if not 0.0 < sparsity <= 1.0:
        raise ValueError(f'Sparsity must lie in (0, 1], got {sparsity}.')
    if n_terms < 1:
        raise ValueError(f'At least one term is required, got {n_terms}.')
    if n_terms_big < 0 or n_terms_big > min(dims):
        raise ValueError(
            f'n_terms_big={n_terms_big} must lie in [0, {min(dims)}].'
        )
    if gamma <= 0:
        raise ValueError(f'gamma must be positive, got {gamma}.')


def sparse_sum_tensor(dims, n_terms, n_terms_big, gamma, sparsity,
                      seed) -> DenseTensor:
    """
    sum_i w_i x_i o y_i o z_i over sparse vectors, w from term_weights.
    """
    dims = tuple(int(n) for n in dims)
    if len(dims) != 3:
        raise ValueError(f'Sparse-sum tensors have three modes, got {dims}.')
    _check_sparse_recipe(dims, n_terms, n_terms_big, gamma, sparsity)
    rng = make_generator(seed)
    x, y, z = (sparse_factor(n, n_terms, sparsity, rng) for n in dims)
    w = term_weights(n_terms, n_terms_big, gamma)
    data = np.einsum('i,ai,bi,ci->abc', w, x, y, z, optimize=True)
    logger.debug('sparse-sum tensor %s with %d terms', dims, n_terms)
    return DenseTensor(data)


def gen_tensor_a(n: int = 100, n_terms_big: int = 50, gamma: float = 1000.0,
                 sparsity: float = 0.05, seed: int = 0,
                 n_terms: int = None) -> DenseTensor:
    """
    Cubic n x n x n recipe A with n rank-one terms unless n_terms is given.
    """
    return sparse_sum_tensor(
        (n, n, n), n if n_terms is None else n_terms,
        n_terms_big, gamma, sparsity, seed,
    )


def gen_tensor_c(dims=(60, 70, 80), seed: int = 0, n_terms_big: int = 50,
                 gamma: float = 1000.0, sparsity: float = 0.05,
                 n_terms: int = None) -> DenseTensor:
    """
    Recipe A with unequal mode sizes; min(dims) terms unless n_terms is given.
    """
    dims = tuple(dims)
    return sparse_sum_tensor(
        dims, min(dims) if n_terms is None else n_terms,
        n_terms_big, gamma, sparsity, seed,
    )


def decay_vector(n: int, decay: str) -> np.ndarray:
    try:
        profile = DECAYS[decay]
    except KeyError:
        raise ValueError(
            f'Unknown decay {decay!r}; choose from {", ".join(DECAYS)}.'
        )
    return profile(np.arange(1, n + 1, dtype=np.float64))


def gen_tensor_b(n: int = 100, decay: str = 'slow',
                 seed: int = 0) -> DenseTensor:
    """
    tendiag(v) x_1 A_1 x_2 A_2 x_3 A_3 with A_k orthogonal n x n.

    Every unfolding has singular values sorted(v, descending).
    """
    if n < 1:
        raise ValueError(f'n must be positive, got {n}.')
    v = decay_vector(n, decay)
    rng = make_generator(seed)
    rotations = [orth(rng.standard_normal((n, n))) for _ in range(3)]
    return multi_mode_product(tendiag(v, (n, n, n)), rotations)


def generate(recipe: str, seed: int = 0, **params) -> DenseTensor:
    """
    Build a test tensor by recipe id ('a', 'b' or 'c').
    """
    if recipe == 'a':
        return gen_tensor_a(seed=seed, **params)
    if recipe == 'b':
        return gen_tensor_b(seed=seed, **params)
    if recipe == 'c':
        return gen_tensor_c(seed=seed, **params)
    raise ValueError(f'Unknown recipe {recipe!r}; choose from a, b, c.')
