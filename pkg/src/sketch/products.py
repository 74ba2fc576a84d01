"""
Kronecker and Khatri-Rao products.
"""

from functools import reduce

import numpy as np


def kronecker(a, b) -> np.ndarray:
    """
    Block matrix [a_ij * b].
    """
    return np.kron(np.atleast_2d(a), np.atleast_2d(b))


def khatri_rao(a, b) -> np.ndarray:
    """
    Column-wise Kronecker product: column i is kron(a[:, i], b[:, i]).
    """
    a, b = np.atleast_2d(a), np.atleast_2d(b)
    if a.shape[1] != b.shape[1]:
        raise ValueError(
            f'Khatri-Rao needs equal column counts, got {a.shape[1]} '
            f'and {b.shape[1]}.'
        )
    return np.einsum('ir,jr->ijr', a, b).reshape(-1, a.shape[1])


def khatri_rao_chain(matrices) -> np.ndarray:
    """
    Fold a sequence of matrices with `khatri_rao` from left to right.
    """
    return reduce(khatri_rao, matrices)
