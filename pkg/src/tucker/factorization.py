"""
Tucker factorizations, reconstruction and relative error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from tensor.dense import (
    DenseTensor,
    as_tensor,
    frobenius_norm,
    multi_mode_product,
)


@dataclass(frozen=True, eq=False)
class TuckerFactorization:
    """
    Core tensor plus one factor matrix per mode.

    factors[k] has shape n_k x r_k and the core has dims (r_1, ..., r_d).
    """
    core: DenseTensor
    factors: tuple[np.ndarray, ...]

    def __post_init__(self):
        core = as_tensor(self.core)
        factors = tuple(np.asarray(u, dtype=np.float64) for u in self.factors)
        if len(factors) != core.ndim:
            raise ValueError(
                f'{len(factors)} factors for a {core.ndim}-way core.'
            )
        for k, u in enumerate(factors):
            if u.ndim != 2 or u.shape[1] != core.dims[k]:
                raise ValueError(
                    f'Factor {k} of shape {u.shape} does not match core '
                    f'dimension {core.dims[k]}.'
                )
        object.__setattr__(self, 'core', core)
        object.__setattr__(self, 'factors', factors)

    @property
    def ranks(self) -> tuple[int, ...]:
        return self.core.dims

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(u.shape[0] for u in self.factors)

    def orthonormality_defect(self) -> float:
        """
        max_k ||U_k^T U_k - I||_F.
        """
        return max(
            float(np.linalg.norm(u.T @ u - np.eye(u.shape[1])))
            for u in self.factors
        )


def project(t, factors, order=None) -> DenseTensor:
    """
    Contract t with the transposed factors, in `order` when given.
    """
    order = range(len(factors)) if order is None else order
    return multi_mode_product(
        t, [factors[k] for k in order], modes=order, transpose=True
    )


def reconstruct(f: TuckerFactorization) -> DenseTensor:
    return multi_mode_product(f.core, f.factors)


def relative_error(t, f: TuckerFactorization) -> float:
    """
    ||t - reconstruct(f)||_F / ||t||_F.
    """
    t = as_tensor(t)
    norm = frobenius_norm(t)
    if norm == 0.0:
        raise ValueError('Relative error is undefined for a zero tensor.')
    approx = reconstruct(f)
    if approx.dims != t.dims:
        raise ValueError(
            f'Factorization dims {approx.dims} differ from tensor dims '
            f'{t.dims}.'
        )
    return float(np.linalg.norm(t.ravel() - approx.ravel()) / norm)
