"""Benchmark initial conditions as discretely consistent states.

Four families: a travelling nonlinear shear-Alfven wave, the vortex of
colliding velocity and magnetic shear layers, the passive advection of a
weak magnetic loop (conical and smooth potentials), and perturbed
current sheets (discontinuous and tanh-smoothed).

Construction rules:

* velocity components are point-sampled at edge midpoints;
* whenever the case is defined through a magnetic potential the field is
  built with :func:`b_from_potential` from vertex samples, which makes
  its staggered divergence vanish by telescoping;
* directly sampled fields are verified solenoidal and projected if the
  staggered divergence exceeds ``1e-12`` (one periodic Poisson solve
  assembled from the module's own divergence/gradient stencils).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dec import Form1
from .errors import CaseParameterError
from .grid import Grid, make_grid
from .integrator import State
from .operators import div_staggered, grad_pressure

__all__ = ["CaseSpec", "CASE_NAMES", "default_spec", "default_grid",
           "b_from_potential", "project_solenoidal", "build_initial_state"]

CASE_NAMES = ("alfven", "orszag_tang", "loop_cone", "loop_smooth",
              "sheet_sharp", "sheet_tanh")

_DIV_TOL = 1e-12


@dataclass(frozen=True)
class CaseSpec:
    """Benchmark case id plus its numeric and domain parameters.

    Field meanings vary per case: ``v0``/``b0`` are velocity/field
    amplitudes, ``a0`` the potential amplitude, ``radius`` the loop
    radius, ``x1``/``x2`` the sheet positions, ``pressure`` the uniform
    initial pressure.  Domain and resolution defaults follow the
    standard setups and may be overridden.
    """

    case: str
    v0: float = 1.0
    b0: float = 1.0
    a0: float = 1e-3
    radius: float = 0.3
    pressure: float = 0.1
    x1: float = 0.5
    x2: float = 1.5
    nx: int = 32
    ny: int = 32
    lx: float = 2.0
    ly: float = 2.0
    x0: float = 0.0
    y0: float = 0.0
    ht: float = 0.1

    def __post_init__(self):
        if self.case not in CASE_NAMES:
            raise CaseParameterError(
                f"unknown case {self.case!r}; expected one of {CASE_NAMES}")
        if self.radius <= 0.0:
            raise CaseParameterError("loop radius must be positive")
        if self.nx < 2 or self.ny < 2:
            raise CaseParameterError("resolutions must be at least 2")


_DEFAULTS = {
    "alfven": dict(v0=1.0, b0=1.0, pressure=0.1,
                   nx=32, ny=32, lx=2.0, ly=2.0, x0=0.0, y0=0.0, ht=0.1),
    "orszag_tang": dict(pressure=0.1, nx=64, ny=64,
                        lx=2.0 * math.pi, ly=2.0 * math.pi,
                        x0=0.0, y0=0.0, ht=0.01),
    "loop_cone": dict(a0=1e-3, radius=0.3, pressure=1.0,
                      nx=128, ny=64, lx=2.0, ly=1.0, x0=-1.0, y0=-0.5,
                      ht=0.01),
    "loop_smooth": dict(a0=1e-3, pressure=1.0,
                        nx=64, ny=64, lx=2.0, ly=2.0, x0=-1.0, y0=-1.0,
                        ht=0.01),
    "sheet_sharp": dict(v0=0.1, pressure=0.1, x1=0.5, x2=1.5,
                        nx=32, ny=32, lx=2.0, ly=2.0, x0=0.0, y0=0.0, ht=0.1),
    "sheet_tanh": dict(v0=0.1, pressure=0.1, x1=0.5, x2=1.5,
                       nx=32, ny=32, lx=2.0, ly=2.0, x0=0.0, y0=0.0, ht=0.1),
}


def default_spec(case: str, **overrides) -> CaseSpec:
    """Spec with the case's standard parameters, optionally overridden."""
    if case not in _DEFAULTS:
        raise CaseParameterError(
            f"unknown case {case!r}; expected one of {CASE_NAMES}")
    params = dict(_DEFAULTS[case])
    params.update(overrides)
    return CaseSpec(case=case, **params)


def default_grid(spec: CaseSpec) -> Grid:
    return make_grid(spec.nx, spec.ny, spec.lx, spec.ly, spec.x0, spec.y0)


def b_from_potential(a: np.ndarray, grid: Grid) -> Form1:
    """Edge field of a vertex potential:  B^x = D_y A,  B^y = -D_x A.

    The staggered divergence of the result telescopes to zero for any
    finite input.
    """
    a = np.asarray(a, dtype=float)
    if a.shape != grid.shape:
        raise CaseParameterError(
            f"potential shape {a.shape} does not match grid {grid.shape}")
    bx = (np.roll(a, -1, axis=1) - a) / grid.hy
    by = -(np.roll(a, -1, axis=0) - a) / grid.hx
    return Form1(grid, "primal", bx, by)


def _poisson_periodic(rhs: np.ndarray, grid: Grid) -> np.ndarray:
    """Solve the five-point periodic Poisson problem  Lap q = rhs.

    The DFT diagonalises the discrete stencil exactly, so the returned q
    satisfies the staggered div/grad composition to roundoff.  Mean-zero
    gauge.
    """
    nx, ny = grid.shape
    kx = np.fft.fftfreq(nx)
    ky = np.fft.rfftfreq(ny)
    lam = (-4.0 * np.sin(np.pi * kx[:, None]) ** 2 / grid.hx ** 2
           - 4.0 * np.sin(np.pi * ky[None, :]) ** 2 / grid.hy ** 2)
    lam[0, 0] = 1.0
    rhat = np.fft.rfft2(rhs) / lam
    rhat[0, 0] = 0.0
    return np.fft.irfft2(rhat, s=grid.shape)


def project_solenoidal(v: Form1) -> Form1:
    """Remove the discrete-gradient part so the staggered divergence
    vanishes to roundoff."""
    q = _poisson_periodic(div_staggered(v), v.grid)
    gx, gy = grad_pressure(q, v.grid)
    return Form1(v.grid, v.kind, v.x_values - gx, v.y_values - gy)


def _sample_edges(grid: Grid, fx, fy) -> Form1:
    """Point-evaluate component closures at the edge midpoints."""
    xx, xy = grid.mesh("int", "half")    # x-edge midpoints (i, j+1/2)
    yx, yy = grid.mesh("half", "int")    # y-edge midpoints (i+1/2, j)
    return Form1(grid, "primal", fx(xx, xy), fy(yx, yy))


def _sample_vertices(grid: Grid, f) -> np.ndarray:
    vx, vy = grid.mesh("int", "int")     # dual vertices (i, j)
    return f(vx, vy)


def _loop_frame(spec: CaseSpec) -> tuple[float, float]:
    """Advection speed and angle from the domain lengths.

    The loop crosses the periodic box diagonally and returns to its
    initial position at integer times.
    """
    v0 = math.hypot(spec.lx, spec.ly)
    theta = math.atan2(spec.ly, spec.lx)
    return v0, theta


def _fields(spec: CaseSpec, grid: Grid):
    """Velocity form, magnetic form and whether B came from a potential."""
    name = spec.case

    if name == "alfven":
        v = _sample_edges(grid,
                          lambda x, y: np.zeros_like(x),
                          lambda x, y: spec.v0 * np.sin(np.pi * x))
        b = _sample_edges(grid,
                          lambda x, y: np.full_like(x, spec.b0),
                          lambda x, y: spec.b0 * np.sin(np.pi * x))
        return v, b, False

    if name == "orszag_tang":
        # streaming function 2 sin y - 2 cos x, potential cos 2y - 2 cos x
        v = _sample_edges(grid,
                          lambda x, y: 2.0 * np.cos(y),
                          lambda x, y: -2.0 * np.sin(x))
        a = _sample_vertices(grid, lambda x, y: np.cos(2.0 * y) - 2.0 * np.cos(x))
        return v, b_from_potential(a, grid), True

    if name in ("loop_cone", "loop_smooth"):
        v0, theta = _loop_frame(spec)
        v = _sample_edges(grid,
                          lambda x, y: np.full_like(x, v0 * math.cos(theta)),
                          lambda x, y: np.full_like(x, v0 * math.sin(theta)))
        cx = spec.x0 + spec.lx / 2.0
        cy = spec.y0 + spec.ly / 2.0
        if name == "loop_cone":
            if spec.radius > min(spec.lx, spec.ly) / 2.0:
                raise CaseParameterError(
                    f"loop radius {spec.radius} exceeds the half-width of "
                    f"the domain {min(spec.lx, spec.ly) / 2.0}")

            def a_fn(x, y):
                r = np.hypot(x - cx, y - cy)
                return np.where(r <= spec.radius,
                                spec.a0 * (spec.radius - r), 0.0)
        else:
            def a_fn(x, y):
                return spec.a0 * np.exp(np.cos(np.pi * (x - cx))
                                        + np.cos(np.pi * (y - cy)))
        return v, b_from_potential(_sample_vertices(grid, a_fn), grid), True

    # current sheets: V = (v0 sin(pi y), 0), B = (0, By(x))
    v = _sample_edges(grid,
                      lambda x, y: spec.v0 * np.sin(np.pi * y),
                      lambda x, y: np.zeros_like(x))
    if name == "sheet_sharp":
        def by_fn(x):
            return np.where((x >= spec.x1) & (x <= spec.x2), -1.0, 1.0)
    else:
        xm = 0.5 * (spec.x1 + spec.x2)

        def by_fn(x):
            return np.where(x < xm,
                            np.tanh(10.0 * (x - spec.x1)),
                            -np.tanh(10.0 * (x - spec.x2)))
    b = _sample_edges(grid,
                      lambda x, y: np.zeros_like(x),
                      lambda x, y: by_fn(x))
    return v, b, False


def build_initial_state(spec: CaseSpec, grid: Grid | None = None) -> State:
    """Sample the case on the grid and return a solenoidal :class:`State`.

    Both fields are projected if their staggered divergence exceeds
    ``1e-12``; fields built from a potential never need it.
    """
    if grid is None:
        grid = default_grid(spec)
    v, b, b_exact = _fields(spec, grid)
    if float(np.max(np.abs(div_staggered(v)))) > _DIV_TOL:
        v = project_solenoidal(v)
    if not b_exact and float(np.max(np.abs(div_staggered(b)))) > _DIV_TOL:
        b = project_solenoidal(b)
    p = np.full(grid.shape, spec.pressure)
    return State(v=v, b=b, p=p, t=0.0)
