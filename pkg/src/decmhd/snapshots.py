"""Self-describing binary field snapshots (format ``DECMHD01``).

Layout, all little-endian:

========  =====================================================
bytes     content
========  =====================================================
0..7      magic ``b"DECMHD01"``
8..15     u32 nx, u32 ny
16..55    f64 lx, ly, x0, y0, t
56..      five f64 arrays, row-major ``(nx, ny)``:
          v_x, v_y, b_x, b_y, p
========  =====================================================

Reading back a written state reproduces it bit-exactly.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .dec import Form1
from .errors import SnapshotFormatError
from .grid import make_grid
from .integrator import State

__all__ = ["MAGIC", "write_snapshot", "read_snapshot", "snapshot_size"]

MAGIC = b"DECMHD01"
_HEADER = struct.Struct("<II5d")
_FIELDS = ("v_x", "v_y", "b_x", "b_y", "p")


def snapshot_size(nx: int, ny: int) -> int:
    """Total file size in bytes for an ``nx x ny`` snapshot."""
    return len(MAGIC) + _HEADER.size + len(_FIELDS) * nx * ny * 8


def write_snapshot(state: State, path) -> None:
    g = state.grid
    arrays = (state.v.x_values, state.v.y_values,
              state.b.x_values, state.b.y_values, state.p)
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(_HEADER.pack(g.nx, g.ny, g.lx, g.ly, g.x0, g.y0, state.t))
        for a in arrays:
            fh.write(np.ascontiguousarray(a, dtype="<f8").tobytes())


def read_snapshot(path) -> State:
    raw = Path(path).read_bytes()
    if raw[:len(MAGIC)] != MAGIC:
        raise SnapshotFormatError(
            f"{path}: bad magic {raw[:len(MAGIC)]!r}, expected {MAGIC!r}")
    try:
        nx, ny, lx, ly, x0, y0, t = _HEADER.unpack_from(raw, len(MAGIC))
    except struct.error as exc:
        raise SnapshotFormatError(f"{path}: truncated header") from exc
    expected = snapshot_size(nx, ny)
    if len(raw) != expected:
        raise SnapshotFormatError(
            f"{path}: expected {expected} bytes for {nx}x{ny}, got {len(raw)}")
    grid = make_grid(nx, ny, lx, ly, x0, y0)
    offset = len(MAGIC) + _HEADER.size
    fields = []
    for _ in _FIELDS:
        a = np.frombuffer(raw, dtype="<f8", count=nx * ny, offset=offset)
        fields.append(a.reshape(nx, ny).copy())
        offset += nx * ny * 8
    v = Form1(grid, "primal", fields[0], fields[1])
    b = Form1(grid, "primal", fields[2], fields[3])
    return State(v=v, b=b, p=fields[4], t=t)
