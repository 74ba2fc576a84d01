"""
Operation tallies for the randomized solvers.

A dense product of an m x k by a k x n matrix counts m*k*n units of C_mm;
the SVD of an m x n matrix counts m*n*min(m, n) units of C_svd, and an
unpivoted economy QR of the same matrix as many units of C_qr.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from tucker.config import resolve_order


@dataclass
class ComplexityCounter:
    c_mm: int = 0
    c_svd: int = 0
    c_qr: int = 0

    def matmul(self, m: int, k: int, n: int):
        self.c_mm += int(m) * int(k) * int(n)

    def svd(self, m: int, n: int):
        self.c_svd += int(m) * int(n) * min(int(m), int(n))

    def qr(self, m: int, n: int):
        self.c_qr += int(m) * int(n) * min(int(m), int(n))

    def as_dict(self) -> dict:
        return asdict(self)


def predicted_counts(dims, ranks, sample_sizes, powers, order=None,
                     branch='st') -> ComplexityCounter:
    """
    Closed-form tallies of a randomized T-HOSVD (`branch='t'`) or ST-HOSVD
    (`branch='st'`) run.

    Per mode k the range finder costs (2q_k + 1) N l_k units of C_mm, where
    N is the size of the tensor being sketched, plus (q_k + 1) n_k l_k^2
    units of C_svd; the core update costs r_k times the current core size.
    `powers` is a single q or one q_k per mode.
    """
    if branch not in ('t', 'st'):
        raise ValueError(f"Unknown branch {branch!r}, expected 't' or 'st'.")
    dims = list(dims)
    d = len(dims)
    if isinstance(powers, int):
        powers = (powers,) * d
    counter = ComplexityCounter()
    full = math.prod(dims)
    current = list(dims)
    for k in resolve_order(order, d):
        n, r, size, q = dims[k], ranks[k], sample_sizes[k], powers[k]
        sketched = full if branch == 't' else math.prod(current)
        counter.c_mm += (2 * q + 1) * sketched * size
        counter.c_svd += (q + 1) * n * size * min(n, size)
        counter.c_mm += r * math.prod(current)
        current[k] = r
    return counter
