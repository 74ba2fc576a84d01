"""
Dense tensors and the multilinear primitives the solvers are built from.

Linearization follows the Kolda-Bader convention: the first mode index
varies fastest in storage, and the columns of a mode-k unfolding enumerate
the remaining modes with the lowest remaining mode varying fastest.
Modes are numbered from 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class DenseTensor:
    """
    Immutable d-way array of 64-bit floats.
    """
    data: np.ndarray

    def __post_init__(self):
        array = np.array(self.data, dtype=np.float64, order='F', copy=True)
        if array.ndim < 1:
            array = array.reshape((1,), order='F')
        if any(n < 1 for n in array.shape):
            raise ValueError(
                f'Every dimension must be positive, got {array.shape}.'
            )
        array.flags.writeable = False
        object.__setattr__(self, 'data', array)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(int(n) for n in self.data.shape)

    @property
    def ndim(self) -> int:
        return self.data.ndim

    @property
    def size(self) -> int:
        return int(self.data.size)

    def ravel(self) -> np.ndarray:
        """
        Return the entries in storage (mode-0 fastest) order.
        """
        return self.data.ravel(order='F')

    @classmethod
    def from_storage(cls, values, dims) -> DenseTensor:
        """
        Build a tensor from a flat vector laid out in storage order.
        """
        values = np.asarray(values, dtype=np.float64)
        dims = tuple(int(n) for n in dims)
        if values.size != math.prod(dims):
            raise ValueError(
                f'{values.size} values cannot fill a tensor of dims {dims}.'
            )
        return cls(values.reshape(dims, order='F'))

    def __eq__(self, other):
        if not isinstance(other, DenseTensor):
            return NotImplemented
        return (
            self.dims == other.dims
            and np.array_equal(self.data, other.data)
        )

    __hash__ = None


def as_tensor(t) -> DenseTensor:
    if isinstance(t, DenseTensor):
        return t
    return DenseTensor(np.asarray(t))


def _check_mode(k: int, ndim: int):
    if not 0 <= k < ndim:
        raise ValueError(f'Mode {k} is out of range for a {ndim}-way tensor.')


def unfold(t, k: int) -> np.ndarray:
    """
    Return the mode-k unfolding A_(k) of shape n_k x prod(n_j, j != k).
    """
    t = as_tensor(t)
    _check_mode(k, t.ndim)
    return np.reshape(np.moveaxis(t.data, k, 0), (t.dims[k], -1), order='F')


def fold(m, k: int, dims) -> DenseTensor:
    """
    Inverse of `unfold` for the same mode and target dims.
    """
    m = np.asarray(m, dtype=np.float64)
    dims = tuple(int(n) for n in dims)
    _check_mode(k, len(dims))
    rest = math.prod(dims) // dims[k]
    if m.ndim != 2 or m.shape != (dims[k], rest):
        raise ValueError(
            f'Matrix of shape {m.shape} does not unfold dims {dims} '
            f'along mode {k}.'
        )
    moved = (dims[k],) + dims[:k] + dims[k + 1:]
    return DenseTensor(np.moveaxis(np.reshape(m, moved, order='F'), 0, k))


def mode_product(t, b, k: int) -> DenseTensor:
    """
    Mode-k product t x_k b, with unfold(result, k) = b @ unfold(t, k).
    """
    t = as_tensor(t)
    b = np.asarray(b, dtype=np.float64)
    _check_mode(k, t.ndim)
    if b.ndim != 2 or b.shape[1] != t.dims[k]:
        raise ValueError(
            f'Matrix of shape {b.shape} cannot multiply mode {k} '
            f'of size {t.dims[k]}.'
        )
    return DenseTensor(np.moveaxis(np.tensordot(b, t.data, axes=(1, k)), 0, k))


def multi_mode_product(t, matrices, modes=None,
                       transpose=False) -> DenseTensor:
    """
    Apply a sequence of mode products, optionally with transposed factors.
    """
    result = as_tensor(t)
    if modes is None:
        modes = range(len(matrices))
    for k, b in zip(modes, matrices):
        b = np.asarray(b)
        result = mode_product(result, b.T if transpose else b, k)
    return result


def inner_product(t1, t2) -> float:
    t1, t2 = as_tensor(t1), as_tensor(t2)
    if t1.dims != t2.dims:
        raise ValueError(f'Dims {t1.dims} and {t2.dims} differ.')
    return float(np.dot(t1.ravel(), t2.ravel()))


def frobenius_norm(t) -> float:
    return float(np.linalg.norm(as_tensor(t).ravel()))


def tendiag(v, dims) -> DenseTensor:
    """
    Place v on the superdiagonal (i, i, ..., i) of a zero tensor.
    """
    v = np.asarray(v, dtype=np.float64).ravel()
    dims = tuple(int(n) for n in dims)
    if v.size > min(dims):
        raise ValueError(
            f'Vector of length {v.size} does not fit the diagonal of {dims}.'
        )
    data = np.zeros(dims, order='F')
    idx = np.arange(v.size)
    data[(idx,) * len(dims)] = v
    return DenseTensor(data)
