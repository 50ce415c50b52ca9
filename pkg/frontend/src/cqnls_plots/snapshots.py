"""Reader/writer for CQNLS1 binary field snapshots.

Layout (little-endian): 6-byte magic "CQNLS1", Nx and Ny as int64, Lx, Ly
and t as float64, then Nx*Ny interleaved (re, im) float64 pairs stored
row-major with x fastest.  The reader is strict and reports the byte
offset of whatever it objects to.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

MAGIC = b"CQNLS1"
_HEADER = struct.Struct("<6sqqddd")


class SnapshotError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Snapshot:
    Nx: int
    Ny: int
    Lx: float
    Ly: float
    t: float
    values: np.ndarray  # complex128, shape (Ny, Nx)

    @property
    def x(self) -> np.ndarray:
        return -np.pi * self.Lx + (2 * np.pi * self.Lx / self.Nx) * np.arange(self.Nx)

    @property
    def y(self) -> np.ndarray:
        return -np.pi * self.Ly + (2 * np.pi * self.Ly / self.Ny) * np.arange(self.Ny)


def read_snapshot(path) -> Snapshot:
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _HEADER.size:
        raise SnapshotError("truncated header", offset=len(raw))
    magic, Nx, Ny, Lx, Ly, t = _HEADER.unpack_from(raw, 0)
    if magic != MAGIC:
        raise SnapshotError(f"bad magic {magic!r}", offset=0)
    if Nx <= 0 or Ny <= 0:
        raise SnapshotError(f"nonsensical grid shape {Nx}x{Ny}", offset=6)
    expected = _HEADER.size + 16 * Nx * Ny
    if len(raw) != expected:
        raise SnapshotError(
            f"payload size mismatch: have {len(raw)}, expected {expected}",
            offset=min(len(raw), expected))
    values = np.frombuffer(raw, dtype="<c16", offset=_HEADER.size).reshape(Ny, Nx)
    return Snapshot(int(Nx), int(Ny), float(Lx), float(Ly), float(t), values.copy())


def write_snapshot(path, snap: Snapshot) -> None:
    header = _HEADER.pack(MAGIC, snap.Nx, snap.Ny, snap.Lx, snap.Ly, snap.t)
    data = np.ascontiguousarray(snap.values, dtype="<c16")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(data.tobytes())
