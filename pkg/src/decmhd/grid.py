"""Periodic staggered Cartesian mesh.

All staggered fields in this package are stored as dense ``(nx, ny)``
float arrays indexed by the integer pair ``(i, j)`` of the owning cell;
the half-integer offsets of the staggered locations are implicit in each
field's declared stagger kind.  The :class:`Grid` owns the geometry and
the coordinate maps; periodic index arithmetic lives here as well.

Staggering convention (primal grid):

* cell centres ``(i, j)`` at ``(x0 + i*hx, y0 + j*hy)``,
* vertices at ``(i+1/2, j+1/2)``, stored at index ``(i, j)``,
* horizontal edges (x-components) at ``(i, j+1/2)``, stored at ``(i, j)``,
* vertical edges (y-components) at ``(i+1/2, j)``, stored at ``(i, j)``.

The dual grid swaps the two labellings: dual vertices sit at cell centres
``(i, j)``, dual cells at ``(i+1/2, j+1/2)``, dual x-edges at
``(i+1/2, j)`` and dual y-edges at ``(i, j+1/2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridDimensionError

__all__ = ["Grid", "make_grid", "wrap", "shift"]


def wrap(i: int, n: int) -> int:
    """Fold an arbitrary integer index into ``[0, n)`` periodically."""
    return i % n


def shift(a: np.ndarray, di: int, dj: int) -> np.ndarray:
    """Return the array sampled at ``(i + di, j + dj)`` with periodic wrap.

    ``shift(a, 1, 0)[i, j] == a[(i + 1) % nx, j]``.
    """
    if di:
        a = np.roll(a, -di, axis=0)
    if dj:
        a = np.roll(a, -dj, axis=1)
    return a


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid on ``[x0, x0+lx) x [y0, y0+ly)``.

    Immutable after construction; safe to share between threads.
    """

    nx: int
    ny: int
    lx: float
    ly: float
    x0: float = 0.0
    y0: float = 0.0

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise GridDimensionError(
                f"grid needs at least 2x2 cells, got {self.nx}x{self.ny}"
            )
        if not (self.lx > 0.0 and self.ly > 0.0):
            raise GridDimensionError(
                f"domain lengths must be positive, got lx={self.lx}, ly={self.ly}"
            )

    @property
    def hx(self) -> float:
        return self.lx / self.nx

    @property
    def hy(self) -> float:
        return self.ly / self.ny

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nx, self.ny)

    @property
    def n_cells(self) -> int:
        return self.nx * self.ny

    @property
    def cell_area(self) -> float:
        return self.hx * self.hy

    # coordinate maps; `i`/`j` may be integer arrays
    def x(self, i):
        """x-coordinate of integer station ``i`` (cell centres, dual vertices)."""
        return self.x0 + np.asarray(i) * self.hx

    def y(self, j):
        return self.y0 + np.asarray(j) * self.hy

    def x_half(self, i):
        """x-coordinate of half-integer station ``i + 1/2``."""
        return self.x0 + (np.asarray(i) + 0.5) * self.hx

    def y_half(self, j):
        return self.y0 + (np.asarray(j) + 0.5) * self.hy

    def wrap_x(self, i: int) -> int:
        return wrap(i, self.nx)

    def wrap_y(self, j: int) -> int:
        return wrap(j, self.ny)

    def mesh(self, x_stagger: str, y_stagger: str):
        """Coordinate arrays of shape ``(nx, ny)`` for a staggered location.

        ``x_stagger`` / ``y_stagger`` are ``"int"`` (integer station) or
        ``"half"`` (half-integer station).
        """
        i = np.arange(self.nx)
        j = np.arange(self.ny)
        xs = self.x(i) if x_stagger == "int" else self.x_half(i)
        ys = self.y(j) if y_stagger == "int" else self.y_half(j)
        return np.meshgrid(xs, ys, indexing="ij")

    def zeros(self) -> np.ndarray:
        return np.zeros(self.shape)


def make_grid(nx: int, ny: int, lx: float, ly: float,
              x0: float = 0.0, y0: float = 0.0) -> Grid:
    """Construct a :class:`Grid`, validating the dimensions."""
    return Grid(int(nx), int(ny), float(lx), float(ly), float(x0), float(y0))
