"""
DTNS1 binary container for dense tensors.

Layout: the 5-byte magic ``DTNS1``, a little-endian u32 mode count d,
d little-endian u64 dimensions, then the entries as little-endian f64 in
storage order (mode 0 fastest).
"""

import logging
import math
import struct
from pathlib import Path

import numpy as np

from tensor.dense import DenseTensor, as_tensor


logger = logging.getLogger(__name__)

MAGIC = b'DTNS1'
_COUNT = struct.Struct('<I')


class DtnsFormatError(ValueError):
    """
    Raised for truncated or malformed DTNS1 payloads.
    """


def dumps(t) -> bytes:
    t = as_tensor(t)
    header = MAGIC + _COUNT.pack(t.ndim) + struct.pack(f'<{t.ndim}Q', *t.dims)
    return header + t.ravel().astype('<f8').tobytes()


def loads(payload: bytes) -> DenseTensor:
    if not payload.startswith(MAGIC):
        raise DtnsFormatError('Missing DTNS1 magic bytes.')
    offset = len(MAGIC)
    if len(payload) < offset + _COUNT.size:
        raise DtnsFormatError('Truncated mode count.')
    (d,) = _COUNT.unpack_from(payload, offset)
    offset += _COUNT.size
    if d < 1:
        raise DtnsFormatError('A tensor needs at least one mode.')
    if len(payload) < offset + 8 * d:
        raise DtnsFormatError('Truncated dimension vector.')
    dims = struct.unpack_from(f'<{d}Q', payload, offset)
    offset += 8 * d
    if any(n < 1 for n in dims):
        raise DtnsFormatError(f'Dimensions must be positive, got {dims}.')
    expected = 8 * math.prod(dims)
    if len(payload) - offset != expected:
        raise DtnsFormatError(
            f'Payload holds {len(payload) - offset} bytes, '
            f'dims {dims} need {expected}.'
        )
    values = np.frombuffer(payload, dtype='<f8', offset=offset)
    return DenseTensor.from_storage(values.astype(np.float64), dims)


def save_tensor(path, t) -> Path:
    path = Path(path)
    path.write_bytes(dumps(t))
    logger.debug('Wrote %s', path)
    return path


def load_tensor(path) -> DenseTensor:
    return loads(Path(path).read_bytes())


def save_matrix(path, m) -> Path:
    """
    Store a matrix as a 2-mode tensor.
    """
    return save_tensor(path, DenseTensor(np.atleast_2d(np.asarray(m))))


def load_matrix(path) -> np.ndarray:
    t = load_tensor(path)
    if t.ndim != 2:
        raise DtnsFormatError(f'Expected a matrix, found {t.ndim} modes.')
    return np.array(t.data)
