"""HLXF binary field format and raw-volume ingestion.

HLXF layout (all little-endian)::

    magic    4 bytes   b"HLXF"
    version  u32       1
    ndim     u8
    dims     ndim x u64
    steps    ndim x f64
    samples  prod(dims) x f64, canonical layout (first axis fastest)
"""

from __future__ import annotations

import os
import struct
import tempfile
from pathlib import Path

import numpy as np

from .exceptions import FormatError, ShapeError
from .grid import MAX_NDIM, Field, as_field

__all__ = ["MAGIC", "VERSION", "dumps", "loads", "write_field", "read_field", "load_raw", "atomic_write"]

MAGIC = b"HLXF"
VERSION = 1
_HEAD = struct.Struct("<4sIB")


def dumps(f) -> bytes:
    f = as_field(f)
    parts = [
        _HEAD.pack(MAGIC, VERSION, f.ndim),
        np.asarray(f.dims, dtype="<u8").tobytes(),
        np.asarray(f.steps, dtype="<f8").tobytes(),
        np.ascontiguousarray(f.data, dtype="<f8").tobytes(),
    ]
    return b"".join(parts)


def loads(buf: bytes) -> Field:
    buf = bytes(buf)
    if len(buf) < _HEAD.size:
        raise FormatError(f"truncated header: {len(buf)} of {_HEAD.size} bytes", offset=len(buf))
    magic, version, ndim = _HEAD.unpack_from(buf, 0)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}", offset=0)
    if version != VERSION:
        raise FormatError(f"unsupported version {version}", offset=4)
    if not 1 <= ndim <= MAX_NDIM:
        raise FormatError(f"ndim {ndim} not in 1..{MAX_NDIM}", offset=8)

    pos = _HEAD.size
    meta_end = pos + 16 * ndim
    if len(buf) < meta_end:
        raise FormatError(f"truncated dims/steps: need {meta_end} bytes, have {len(buf)}", offset=len(buf))
    dims = np.frombuffer(buf, dtype="<u8", count=ndim, offset=pos)
    steps = np.frombuffer(buf, dtype="<f8", count=ndim, offset=pos + 8 * ndim)
    if np.any(dims == 0):
        raise FormatError(f"zero-length axis in dims {tuple(int(n) for n in dims)}", offset=pos)

    count = int(np.prod(dims.astype(object)))
    expected = meta_end + 8 * count
    if len(buf) != expected:
        kind = "truncated" if len(buf) < expected else "trailing bytes in"
        raise FormatError(
            f"{kind} sample block: expected {expected} bytes total, have {len(buf)}",
            offset=min(len(buf), expected),
        )
    data = np.frombuffer(buf, dtype="<f8", count=count, offset=meta_end)
    try:
        return Field.from_canonical(data, tuple(int(n) for n in dims), tuple(float(s) for s in steps))
    except ShapeError as exc:
        raise FormatError(str(exc), offset=pos) from exc


def atomic_write(path, payload) -> None:
    """Write bytes or text to ``path`` via a temp file and rename."""
    path = Path(path)
    if isinstance(payload, str):
        payload = payload.encode()
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_field(path, f) -> None:
    atomic_write(path, dumps(f))


def read_field(path) -> Field:
    return loads(Path(path).read_bytes())


def load_raw(path, dims, dtype="f32", layout="F", steps=None) -> Field:
    """Read a headerless little-endian float volume.

    ``layout`` is ``"F"`` when the first axis varies fastest in the file and
    ``"C"`` when the last axis does.
    """
    dtypes = {"f32": "<f4", "f64": "<f8"}
    if dtype not in dtypes:
        raise ValueError(f"dtype must be one of {sorted(dtypes)}, got {dtype!r}")
    if layout not in ("F", "C"):
        raise ValueError(f"layout must be 'F' or 'C', got {layout!r}")
    dims = tuple(int(n) for n in dims)
    raw = Path(path).read_bytes()
    item = np.dtype(dtypes[dtype]).itemsize
    expected = item * int(np.prod(dims, dtype=np.int64))
    if len(raw) != expected:
        raise ShapeError(f"size mismatch: dims {dims} as {dtype} need {expected} bytes, file has {len(raw)} bytes")
    values = np.frombuffer(raw, dtype=dtypes[dtype]).astype(np.float64).reshape(dims, order=layout)
    return Field(values, steps)
