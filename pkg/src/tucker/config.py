"""
Solver configuration.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, field, replace

from sketch.generators import SketchSpec


DEFAULT_OVERSAMPLING = 10
DEFAULT_POWER = 1
DEFAULT_PVE_TOL = 0.5
DEFAULT_PVE_QMAX = 10000


def resolve_order(order, d: int) -> tuple[int, ...]:
    """
    Return `order` as a tuple, or (0, ..., d-1) when it is None.
    """
    if order is None:
        return tuple(range(d))
    order = tuple(int(k) for k in order)
    if sorted(order) != list(range(d)):
        raise ValueError(f'{order} is not a permutation of the {d} modes.')
    return order


@dataclass(frozen=True)
class PveControl:
    """
    Stopping rule for adaptive power iterations.
    """
    tol: float = DEFAULT_PVE_TOL
    q_max: int = DEFAULT_PVE_QMAX

    def __post_init__(self):
        if not 0.0 < self.tol <= 1.0:
            raise ValueError(
                f'PVE tolerance must lie in (0, 1], got {self.tol}.'
            )
        if self.q_max < 1:
            raise ValueError(f'q_max must be at least 1, got {self.q_max}.')


@dataclass(frozen=True)
class SolverConfig:
    """
    Target ranks and sketching parameters shared by the randomized solvers.

    `oversampling` may be a single integer applied to every mode. Modes in
    `processing_order` are numbered from 0.
    """
    ranks: tuple[int, ...]
    oversampling: tuple[int, ...] | int = DEFAULT_OVERSAMPLING
    power: int = DEFAULT_POWER
    pve: PveControl | None = None
    processing_order: tuple[int, ...] | None = None
    sketch: SketchSpec = field(default_factory=SketchSpec)
    shift_enabled: bool = False

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        if not ranks:
            raise ValueError('At least one rank is required.')
        if any(r < 1 for r in ranks):
            raise ValueError(f'Ranks must be positive, got {ranks}.')
        object.__setattr__(self, 'ranks', ranks)

        oversampling = self.oversampling
        if isinstance(oversampling, numbers.Integral):
            oversampling = (oversampling,) * len(ranks)
        oversampling = tuple(int(s) for s in oversampling)
        if len(oversampling) != len(ranks):
            raise ValueError(
                f'{len(oversampling)} oversampling values for '
                f'{len(ranks)} ranks.'
            )
        if any(s < 0 for s in oversampling):
            raise ValueError(
                f'Oversampling must be nonnegative, got {oversampling}.'
            )
        object.__setattr__(self, 'oversampling', oversampling)

        if self.power < 0:
            raise ValueError(f'Power must be nonnegative, got {self.power}.')
        if self.processing_order is not None:
            object.__setattr__(
                self, 'processing_order',
                resolve_order(self.processing_order, len(ranks)),
            )

    @property
    def ndim(self) -> int:
        return len(self.ranks)

    @property
    def sample_sizes(self) -> tuple[int, ...]:
        return tuple(r + s for r, s in zip(self.ranks, self.oversampling))

    def order(self, order=None) -> tuple[int, ...]:
        return resolve_order(
            self.processing_order if order is None else order, self.ndim
        )

    def with_options(self, **changes) -> SolverConfig:
        return replace(self, **changes)

    def check_dims(self, dims):
        """
        Raise ValueError unless r_k <= l_k <= min(n_k, prod of other dims).
        """
        dims = tuple(dims)
        if len(dims) != self.ndim:
            raise ValueError(
                f'{self.ndim} ranks given for a {len(dims)}-way tensor.'
            )
        total = math.prod(dims)
        sizes = zip(dims, self.ranks, self.sample_sizes)
        for k, (n, r, size) in enumerate(sizes):
            if r > n:
                raise ValueError(
                    f'Rank {r} exceeds dimension {n} of mode {k}.'
                )
            if size > min(n, total // n):
                raise ValueError(
                    f'Sample size {size} of mode {k} exceeds '
                    f'min({n}, {total // n}).'
                )
