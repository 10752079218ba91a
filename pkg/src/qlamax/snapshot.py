"""Binary field snapshots.

Layout: the 8 bytes ``QLAFLD01``, then little-endian uint32 ``nx``, ``ny`` and
component count (4), then ``nx*ny*4`` little-endian float64 (real, imag)
pairs. Sites are row-major with x the slow index: site (i, j) starts at pair
``(i*ny + j)*4``; the four components of a site are contiguous.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from qlamax.fields import FieldGrid

MAGIC = b"QLAFLD01"
_HEADER = struct.Struct("<III")


def snapshot_bytes(g: FieldGrid) -> bytes:
    body = np.ascontiguousarray(g.psi, dtype="<c16").tobytes()
    return MAGIC + _HEADER.pack(g.nx, g.ny, 4) + body


def write_snapshot(path: str | Path, g: FieldGrid) -> None:
    Path(path).write_bytes(snapshot_bytes(g))


def parse_snapshot(data: bytes, dx: float = 1.0) -> FieldGrid:
    if data[:8] != MAGIC:
        raise ValueError(f"bad snapshot magic {data[:8]!r}")
    nx, ny, ncomp = _HEADER.unpack_from(data, 8)
    if ncomp != 4:
        raise ValueError(f"expected 4 components, found {ncomp}")
    start = 8 + _HEADER.size
    expected = nx * ny * ncomp * 16
    if len(data) - start != expected:
        raise ValueError(f"snapshot body is {len(data) - start} bytes, expected {expected}")
    psi = np.frombuffer(data, dtype="<c16", offset=start).reshape(nx, ny, ncomp)
    return FieldGrid(psi.astype(np.complex128), dx)


def read_snapshot(path: str | Path, dx: float = 1.0) -> FieldGrid:
    return parse_snapshot(Path(path).read_bytes(), dx)
