"""Binary snapshot files (format tag "CQNLS1").

Layout, all little-endian:

    bytes 0..5    magic "CQNLS1"
    bytes 6..13   Nx   (int64)
    bytes 14..21  Ny   (int64)
    bytes 22..29  Lx   (float64)
    bytes 30..37  Ly   (float64)
    bytes 38..45  t    (float64)
    bytes 46..    Nx*Ny interleaved (re, im) float64 pairs,
                  row-major with x fastest
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import SnapshotFormatError
from .grid import Field, Grid2D, make_grid

MAGIC = b"CQNLS1"
_HEADER = struct.Struct("<6sqqddd")


def write_snapshot(path, f: Field, t: float) -> None:
    g = f.grid
    header = _HEADER.pack(MAGIC, g.Nx, g.Ny, g.Lx, g.Ly, float(t))
    data = np.ascontiguousarray(f.values, dtype=np.complex128)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(data.tobytes())


def read_snapshot(path) -> tuple[Field, float]:
    """Read a snapshot; returns (field, t).

    Raises SnapshotFormatError naming the byte offset on malformed input.
    """
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _HEADER.size:
        raise SnapshotFormatError("truncated header", offset=len(raw))
    magic, Nx, Ny, Lx, Ly, t = _HEADER.unpack_from(raw, 0)
    if magic != MAGIC:
        raise SnapshotFormatError(f"bad magic {magic!r}", offset=0)
    expected = _HEADER.size + 16 * Nx * Ny
    if len(raw) != expected:
        raise SnapshotFormatError(
            f"payload size mismatch: have {len(raw)} bytes, expected {expected}",
            offset=min(len(raw), expected),
        )
    grid = make_grid(Lx, Ly, int(Nx), int(Ny))
    values = np.frombuffer(raw, dtype="<c16", offset=_HEADER.size).reshape(Ny, Nx)
    return Field(grid, values.copy()), float(t)
