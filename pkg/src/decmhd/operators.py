"""Staggered-grid operators of the implicit-midpoint MHD scheme.

The nonlinear terms of the scheme act on fields known at two consecutive
time levels.  Their common building block is the four-point average that
brings edge components to cell centres in space while averaging the two
time levels:

    xbar[i, j] = (f^x[i, j-1/2] + f^x[i, j+1/2]) / 2, averaged over n, n+1

The advection operator pair (``psi_discrete`` for the curl-type force
terms, ``phi_discrete`` for the flux-form induction terms) is derived
from a discrete action principle; its stencils make the edge-weighted
counterparts of the continuous identities

    u . psi(u, w) = 0,    phi(v, b) = -phi(b, v),
    <b, phi(v, w)> = <v, psi(w, b)>

hold exactly on the periodic grid, which is what gives the integrator
its machine-precision conservation of energy and helicities.

All stencils are written as gather (output-centred) operations on the
``(nx, ny)`` storage arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dec import Form1
from .errors import FormMismatchError
from .grid import Grid, shift

__all__ = [
    "EdgePair", "BarField",
    "bar_average", "midpoint", "curl_midpoint",
    "psi_discrete", "phi_discrete", "flux_function",
    "div_staggered", "grad_pressure",
]


@dataclass(frozen=True)
class EdgePair:
    """One physical edge field at time levels n and n+1."""

    old: Form1
    new: Form1

    def __post_init__(self):
        if self.old.grid != self.new.grid or self.old.kind != self.new.kind:
            raise FormMismatchError("EdgePair levels must share grid and kind")

    @property
    def grid(self) -> Grid:
        return self.old.grid


@dataclass(frozen=True)
class BarField:
    """Cell-centred space-time averages of an edge field."""

    grid: Grid
    xbar: np.ndarray
    ybar: np.ndarray


def midpoint(f: EdgePair) -> tuple[np.ndarray, np.ndarray]:
    """Temporal midpoint of the two levels, still on edges."""
    return (0.5 * (f.old.x_values + f.new.x_values),
            0.5 * (f.old.y_values + f.new.y_values))


def bar_average(f: EdgePair) -> BarField:
    """Four-point spatio-temporal average onto cell centres."""
    mx, my = midpoint(f)
    return BarField(f.grid,
                    xbar=0.5 * (shift(mx, 0, -1) + mx),
                    ybar=0.5 * (shift(my, -1, 0) + my))


def curl_midpoint(f: EdgePair) -> np.ndarray:
    """Cell-centred curl factor  (D_y f^x - D_x f^y)  of the midpoint field."""
    g = f.grid
    mx, my = midpoint(f)
    return (mx - shift(mx, 0, -1)) / g.hy - (my - shift(my, -1, 0)) / g.hx


def psi_discrete(vbar: BarField, w: EdgePair) -> tuple[np.ndarray, np.ndarray]:
    """Curl-transport operator on edges: discrete  v (D_y w^x - D_x w^y).

    The curl of ``w`` is evaluated at cell centres from the time-averaged
    edge values; each edge receives the mean of its two adjacent cells,
    weighted by the transverse bar-averaged component of ``v``.
    """
    if vbar.grid != w.grid:
        raise FormMismatchError("bar field and edge pair live on different grids")
    c = curl_midpoint(w)
    yc = vbar.ybar * c
    xc = vbar.xbar * c
    psi_x = 0.5 * (yc + shift(yc, 0, 1))
    psi_y = -0.5 * (xc + shift(xc, 1, 0))
    return psi_x, psi_y


def flux_function(vbar: BarField, bbar: BarField) -> np.ndarray:
    """Cell-centred electromotive flux  vbar^x bbar^y - vbar^y bbar^x."""
    if vbar.grid != bbar.grid:
        raise FormMismatchError("bar fields live on different grids")
    return vbar.xbar * bbar.ybar - vbar.ybar * bbar.xbar


def phi_discrete(vbar: BarField, bbar: BarField) -> tuple[np.ndarray, np.ndarray]:
    """Flux-form induction operator on edges.

    Differences of the cell-centred flux function, so that any staggered
    divergence of the resulting update telescopes to zero: the induction
    step preserves div B identically.  Antisymmetric under swapping the
    two fields, exactly as its continuous counterpart.
    """
    g = vbar.grid
    w = flux_function(vbar, bbar)
    phi_x = -(shift(w, 0, 1) - w) / g.hy
    phi_y = (shift(w, 1, 0) - w) / g.hx
    return phi_x, phi_y


def div_staggered(v: Form1) -> np.ndarray:
    """Staggered divergence of a primal one-form at the pressure points.

    One-sided differences; entry ``[i, j]`` sits at the primal vertex /
    dual cell centre ``(i+1/2, j+1/2)``.  Agrees entry-for-entry with the
    composition ``hodge(d(hodge(v)))`` of the DEC module.
    """
    if v.kind != "primal":
        raise FormMismatchError("staggered divergence expects a primal one-form")
    g = v.grid
    vx, vy = v.x_values, v.y_values
    return (shift(vx, 1, 0) - vx) / g.hx + (shift(vy, 0, 1) - vy) / g.hy


def grad_pressure(p: np.ndarray, grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    """Pressure gradient from the dual cell centres onto primal edges.

    Plain one-sided differences with no spatial averaging; the negative
    adjoint of :func:`div_staggered` under the uniform edge weights.
    """
    p = np.asarray(p, dtype=float)
    if p.shape != grid.shape:
        raise FormMismatchError(f"expected pressure of shape {grid.shape}, got {p.shape}")
    gx = (p - shift(p, -1, 0)) / grid.hx
    gy = (p - shift(p, 0, -1)) / grid.hy
    return gx, gy
