"""Reader and writer for the IDX binary tensor format.

Layout (all header integers big-endian):

    offset 0: two zero magic bytes
    offset 2: type code (only 0x08, unsigned byte, is supported)
    offset 3: number of dimensions, k
    offset 4: k unsigned 32-bit dimension sizes
    offset 4 + 4k: payload, one byte per element, C order

``read_idx`` scales pixel bytes to [0, 1] by dividing by 255;
``read_idx_raw`` returns the bytes unscaled (used for label files).
Format errors report the byte offset of the defect.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import IdxFormatError

__all__ = ["read_idx", "read_idx_raw", "write_idx"]

_TYPE_UBYTE = 0x08


def _parse_header(blob: bytes) -> tuple[tuple[int, ...], int]:
    """Return (dimensions, payload offset)."""
    if len(blob) < 4:
        raise IdxFormatError(f"file too short for an IDX header ({len(blob)} bytes)", 0)
    if blob[0] != 0 or blob[1] != 0:
        raise IdxFormatError(f"bad magic bytes {blob[0]:#04x} {blob[1]:#04x}", 0)
    type_code = blob[2]
    if type_code != _TYPE_UBYTE:
        raise IdxFormatError(f"unsupported type code {type_code:#04x}", 2)
    ndim = blob[3]
    header_end = 4 + 4 * ndim
    if len(blob) < header_end:
        raise IdxFormatError(
            f"header declares {ndim} dimensions but the file ends early", len(blob)
        )
    dims = struct.unpack_from(f">{ndim}I", blob, 4) if ndim else ()
    return dims, header_end


def read_idx_raw(path) -> tuple[tuple[int, ...], np.ndarray]:
    """Parse an IDX file into (dimensions, flat uint8 array)."""
    blob = Path(path).read_bytes()
    dims, payload_at = _parse_header(blob)
    count = int(np.prod(dims, dtype=np.int64)) if dims else 1
    if dims and min(dims) == 0:
        count = 0
    available = len(blob) - payload_at
    if available < count:
        raise IdxFormatError(
            f"payload truncated: expected {count} bytes, found {available}", payload_at
        )
    if available > count:
        raise IdxFormatError(
            f"trailing data: expected {count} payload bytes, found {available}", payload_at
        )
    data = np.frombuffer(blob, dtype=np.uint8, count=count, offset=payload_at)
    return dims, data.copy()


def read_idx(path) -> tuple[tuple[int, ...], np.ndarray]:
    """Parse an IDX file; element bytes are scaled to [0, 1] by /255."""
    dims, raw = read_idx_raw(path)
    return dims, raw.astype(np.float64) / 255.0


def write_idx(path, array) -> None:
    """Write a uint8 tensor in IDX layout (inverse of :func:`read_idx_raw`)."""
    arr = np.ascontiguousarray(array, dtype=np.uint8)
    with open(path, "wb") as fh:
        fh.write(bytes([0, 0, _TYPE_UBYTE, arr.ndim]))
        for size in arr.shape:
            fh.write(struct.pack(">I", size))
        fh.write(arr.tobytes())
