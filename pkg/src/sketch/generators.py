"""
Seeded random test matrices.

Every stream is numpy's Philox-4x64-10 counter-based bit generator; normal
variates come from numpy's ziggurat sampler (`Generator.standard_normal`).
Child seeds are derived with `numpy.random.SeedSequence` spawn keys so that
modes and trials draw from independent streams.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from sketch.products import khatri_rao_chain


class SketchFamily(str, enum.Enum):
    GAUSSIAN = 'gaussian'
    UNIFORM = 'uniform'
    KR_GAUSSIAN = 'khatri-rao-gaussian'
    KR_UNIFORM = 'khatri-rao-uniform'

    @property
    def is_composite(self) -> bool:
        return self in (SketchFamily.KR_GAUSSIAN, SketchFamily.KR_UNIFORM)

    @property
    def base(self) -> SketchFamily:
        if self is SketchFamily.KR_GAUSSIAN:
            return SketchFamily.GAUSSIAN
        if self is SketchFamily.KR_UNIFORM:
            return SketchFamily.UNIFORM
        return self

    @classmethod
    def parse(cls, value) -> SketchFamily:
        aliases = {
            'kr-gaussian': cls.KR_GAUSSIAN,
            'kr-uniform': cls.KR_UNIFORM,
        }
        if isinstance(value, cls):
            return value
        if value in aliases:
            return aliases[value]
        return cls(value)


_FAMILY_STREAM = {
    SketchFamily.GAUSSIAN: 0,
    SketchFamily.UNIFORM: 1,
    SketchFamily.KR_GAUSSIAN: 2,
    SketchFamily.KR_UNIFORM: 3,
}


@dataclass(frozen=True)
class SketchSpec:
    """
    Which random-matrix family to draw and from which seed.

    For composite families, factor_dims lists the row counts of the base
    matrices whose Khatri-Rao product forms the sketch.
    """
    family: SketchFamily = SketchFamily.GAUSSIAN
    factor_dims: tuple[int, ...] | None = None
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'family', SketchFamily.parse(self.family))
        if self.factor_dims is not None:
            object.__setattr__(
                self, 'factor_dims', tuple(int(n) for n in self.factor_dims)
            )
        object.__setattr__(self, 'seed', int(self.seed))

    def for_stream(self, *path, factor_dims=None) -> SketchSpec:
        """
        Same family, seed derived from this sketch's seed and `path`.
        """
        return SketchSpec(
            family=self.family,
            factor_dims=factor_dims,
            seed=derive_seed(self.seed, *path),
        )


def derive_seed(master: int, *path: int) -> int:
    """
    Deterministic child seed for (master, path...) in [0, 2**63), so it
    fits a signed 64-bit column.
    """
    sequence = np.random.SeedSequence(
        entropy=int(master), spawn_key=tuple(int(p) for p in path)
    )
    return int(sequence.generate_state(1, np.uint64)[0]) >> 1


def make_generator(seed) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed)))


def _check_shape(rows: int, cols: int):
    if rows < 1 or cols < 1:
        raise ValueError(f'Sketch shape must be positive, got {rows}x{cols}.')


def gaussian_matrix(rows: int, cols: int, seed: int) -> np.ndarray:
    """
    Matrix of i.i.d. standard normal entries.
    """
    _check_shape(rows, cols)
    return make_generator(seed).standard_normal((rows, cols))


def uniform_matrix(rows: int, cols: int, seed: int) -> np.ndarray:
    """
    Matrix of i.i.d. entries uniform on [-1, 1].
    """
    _check_shape(rows, cols)
    return make_generator(seed).uniform(-1.0, 1.0, size=(rows, cols))


_BASE_DRAW = {
    SketchFamily.GAUSSIAN: gaussian_matrix,
    SketchFamily.UNIFORM: uniform_matrix,
}


def composite_factor_seeds(spec: SketchSpec, count: int) -> list[int]:
    stream = _FAMILY_STREAM[spec.family]
    return [derive_seed(spec.seed, stream, i) for i in range(count)]


def draw_sketch(spec: SketchSpec, rows: int, cols: int) -> np.ndarray:
    _check_shape(rows, cols)
    draw = _BASE_DRAW[spec.family.base]
    if not spec.family.is_composite:
        return draw(
            rows, cols, derive_seed(spec.seed, _FAMILY_STREAM[spec.family])
        )

    factor_dims = spec.factor_dims or (rows,)
    if math.prod(factor_dims) != rows:
        raise ValueError(
            f'Factor dims {factor_dims} do not multiply to {rows} rows.'
        )
    seeds = composite_factor_seeds(spec, len(factor_dims))
    return khatri_rao_chain(
        [draw(n, cols, seed) for n, seed in zip(factor_dims, seeds)]
    )
