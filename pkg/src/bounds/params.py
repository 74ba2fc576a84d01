"""
Parameters of the probabilistic error bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from linalg.kernels import singular_values
from tensor.dense import as_tensor, unfold
from tucker.config import resolve_order


DEFAULT_BETA = 2.0
DEFAULT_GAMMA = 2.0


def default_j(ranks) -> tuple[int, ...]:
    return tuple(max(1, r - 1) for r in ranks)


def _per_mode(value, d, name, cast=float):
    if np.ndim(value) == 0:
        return (cast(value),) * d
    value = tuple(cast(v) for v in value)
    if len(value) != d:
        raise ValueError(f'{name} needs {d} entries, got {len(value)}.')
    return value


@dataclass(frozen=True)
class BoundParams:
    """
    Analysis knobs and run data for one bound evaluation.

    `spectra[k]` are the singular values of the mode-k unfolding and
    `alphas[k]` the shifts used in each power iteration of mode k (all zero
    for an unshifted run). Indices j_k are 1-based like the ranks.
    """
    dims: tuple[int, ...]
    ranks: tuple[int, ...]
    sample_sizes: tuple[int, ...]
    j: tuple[int, ...] = None
    beta: tuple[float, ...] = DEFAULT_BETA
    gamma: tuple[float, ...] = DEFAULT_GAMMA
    spectra: tuple[np.ndarray, ...] = None
    alphas: tuple[tuple[float, ...], ...] = None
    order: tuple[int, ...] = None

    def __post_init__(self):
        d = len(self.dims)
        set_ = object.__setattr__
        set_(self, 'dims', tuple(int(n) for n in self.dims))
        set_(self, 'ranks', _per_mode(self.ranks, d, 'ranks', int))
        set_(self, 'sample_sizes',
             _per_mode(self.sample_sizes, d, 'sample_sizes', int))
        j = default_j(self.ranks) if self.j is None else self.j
        set_(self, 'j', _per_mode(j, d, 'j', int))
        set_(self, 'beta', _per_mode(self.beta, d, 'beta'))
        set_(self, 'gamma', _per_mode(self.gamma, d, 'gamma'))
        set_(self, 'order', resolve_order(self.order, d))
        if self.alphas is None:
            set_(self, 'alphas', ((),) * d)
        else:
            set_(self, 'alphas', tuple(tuple(map(float, a))
                                       for a in self.alphas))
        if self.spectra is not None:
            set_(self, 'spectra', tuple(
                np.asarray(s, dtype=np.float64) for s in self.spectra
            ))
        self._validate()

    def _validate(self):
        for k in range(len(self.dims)):
            n, r, size = self.dims[k], self.ranks[k], self.sample_sizes[k]
            if not 1 <= self.j[k] <= r:
                raise ValueError(
                    f'j={self.j[k]} must lie in [1, {r}] for mode {k}.'
                )
            if not r <= size:
                raise ValueError(
                    f'Rank {r} exceeds sample size {size} for mode {k}.'
                )
            if r > n:
                raise ValueError(f'Rank {r} exceeds dimension {n}.')
            if self.beta[k] <= 1.0 or self.gamma[k] <= 1.0:
                raise ValueError(
                    f'beta and gamma must exceed 1, got {self.beta[k]} '
                    f'and {self.gamma[k]} for mode {k}.'
                )

    @property
    def ndim(self) -> int:
        return len(self.dims)

    def other_size(self, k: int) -> int:
        """
        prod(n_j, j != k).
        """
        return math.prod(self.dims) // self.dims[k]

    def n_hat(self, k: int) -> int:
        return min(self.dims[k], self.other_size(k))

    def shrunk_other_size(self, k: int) -> int:
        """
        Width of the mode-k unfolding of the partially truncated core.

        Modes processed before k contribute their rank, later modes their
        dimension.
        """
        done = self.order[:self.order.index(k)]
        return math.prod(
            self.ranks[j] if j in done else self.dims[j]
            for j in range(self.ndim) if j != k
        )

    def n_tilde(self, k: int) -> int:
        return min(self.dims[k], self.shrunk_other_size(k))

    def spectrum(self, k: int) -> np.ndarray:
        if self.spectra is None:
            raise ValueError('Bound evaluation needs unfolding spectra.')
        return self.spectra[k]

    @classmethod
    def from_run(cls, t, ranks, sample_sizes, trace=None, j=None,
                 beta=DEFAULT_BETA, gamma=DEFAULT_GAMMA,
                 order=None) -> BoundParams:
        """
        Collect spectra from t and the realized shifts from a solver trace.
        """
        t = as_tensor(t)
        spectra = tuple(singular_values(unfold(t, k)) for k in range(t.ndim))
        alphas = None
        if trace is not None:
            alphas = tuple(
                tuple(trace.for_mode(k).alphas) for k in range(t.ndim)
            )
        return cls(
            dims=t.dims, ranks=ranks, sample_sizes=sample_sizes, j=j,
            beta=beta, gamma=gamma, spectra=spectra, alphas=alphas,
            order=order,
        )
