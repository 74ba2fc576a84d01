"""
Dense matrix factorizations used by the Tucker solvers.
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla


logger = logging.getLogger(__name__)

# Relative size of a QR diagonal entry below which orth drops the column.
RANK_TOL = 1e-12


@dataclass(frozen=True)
class EconSvd:
    """
    Thin SVD m = u @ diag(s) @ v.T with p = min(rows, cols) triplets.
    """
    u: np.ndarray
    s: np.ndarray
    v: np.ndarray


def _fix_signs(u, v):
    """
    Make the largest-magnitude entry of every left singular vector positive.
    """
    if u.size == 0:
        return u, v
    pivots = np.argmax(np.abs(u), axis=0)
    signs = np.sign(u[pivots, np.arange(u.shape[1])])
    signs[signs == 0] = 1.0
    return u * signs, v * signs


def econ_svd(m) -> EconSvd:
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError(f'Expected a matrix, got shape {m.shape}.')
    if not np.all(np.isfinite(m)):
        raise ValueError('Matrix has non-finite entries.')
    try:
        u, s, vt = sla.svd(
            m, full_matrices=False, check_finite=False, lapack_driver='gesdd'
        )
    except np.linalg.LinAlgError:
        logger.debug('gesdd did not converge on %s, retrying gesvd', m.shape)
        u, s, vt = sla.svd(
            m, full_matrices=False, check_finite=False, lapack_driver='gesvd'
        )
    u, v = _fix_signs(u, vt.T)
    return EconSvd(u=u, s=s, v=v)


def singular_values(m) -> np.ndarray:
    m = np.asarray(m, dtype=np.float64)
    if not np.all(np.isfinite(m)):
        raise ValueError('Matrix has non-finite entries.')
    return sla.svdvals(m, check_finite=False)


def orth(m) -> np.ndarray:
    """
    Orthonormal basis for range(m) from an unpivoted economy QR.

    Columns whose QR diagonal falls below RANK_TOL times the largest column
    norm of m are dropped, so a rank-deficient input yields fewer columns.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError(f'Expected a matrix, got shape {m.shape}.')
    q, r = sla.qr(m, mode='economic', check_finite=False)
    scale = np.max(np.linalg.norm(m, axis=0)) if m.size else 0.0
    diag = np.abs(np.diag(r))
    keep = diag > RANK_TOL * scale
    if not np.all(keep):
        logger.debug('orth dropped %d dependent columns', int(np.sum(~keep)))
    return q[:, keep]


def economy_q(m) -> np.ndarray:
    """
    Q factor of an unpivoted economy QR. Unlike orth it keeps every column,
    so the result stays orthonormal with min(m.shape) columns even for
    rank-deficient input.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError(f'Expected a matrix, got shape {m.shape}.')
    return sla.qr(m, mode='economic', check_finite=False)[0]


def truncated_svd(m, r: int):
    """
    Best rank-r approximation factors (u_r, s_r, v_r).
    """
    m = np.asarray(m, dtype=np.float64)
    if not 1 <= r <= min(m.shape):
        raise ValueError(f'Rank {r} is out of range for shape {m.shape}.')
    svd = econ_svd(m)
    return svd.u[:, :r], svd.s[:r], svd.v[:, :r]


def tail_energy(s, r: int) -> float:
    """
    sqrt(sum of s_i**2 for i > r), the optimal rank-r error.
    """
    s = np.asarray(s, dtype=np.float64)
    if r >= s.size:
        return 0.0
    return float(np.sqrt(np.sum(s[max(r, 0):] ** 2)))
