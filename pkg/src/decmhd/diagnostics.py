"""Conserved-quantity diagnostics and derived fields.

Energy and cross helicity are plain bilinear pairings of the edge
fields.  Magnetic helicity is the integral of the out-of-plane magnetic
potential, which is reconstructed from the edge field by path
integration.  Two gauges appear:

* :func:`reconstruct_potential` anchors the potential to a fixed value
  at the first dual vertex.  This is the right tool for a single
  snapshot, but re-anchoring at every step mixes an unphysical gauge
  drift into the time series (the potential is advected, so its value
  at a fixed point is not conserved).
* :class:`PotentialTracker` evolves the potential with the same flux
  function that updates the magnetic field, so its gauge is the one the
  dynamics selects.  The integral of this potential is the quantity the
  integrator conserves to machine precision; the run driver samples it
  for the diagnostics time series.

Fields with a nonzero net flux through the periodic box (e.g. a uniform
background field) have no single-valued potential; the reconstruction
then returns the natural sawtooth branch cut at the wrap seam, which is
well defined because the one-sided recurrences never close a loop.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import dec
from .dec import Form1, Form2
from .errors import NoDominantModeError, PotentialInconsistencyError
from .grid import shift
from .integrator import State
from .operators import EdgePair, bar_average, div_staggered, flux_function

__all__ = [
    "DiagnosticsRecord", "sample_record", "energy", "cross_helicity",
    "reconstruct_potential", "magnetic_helicity", "current_density",
    "phase_velocity", "PotentialTracker",
]


@dataclass(frozen=True)
class DiagnosticsRecord:
    """Per-step sample of the monitored quantities."""

    t: float
    e_kin: float
    e_mag: float
    cross_helicity: float
    magnetic_helicity: float
    div_v_max: float
    div_b_max: float
    newton_iterations: int = 0

    @property
    def e_total(self) -> float:
        return self.e_kin + self.e_mag


def sample_record(state: State, helicity: float,
                  newton_iterations: int = 0) -> DiagnosticsRecord:
    """Collect one record; the helicity value is supplied by the caller
    (time series use the advected-gauge tracker)."""
    e_kin, e_mag = energy(state)
    return DiagnosticsRecord(
        t=state.t, e_kin=e_kin, e_mag=e_mag,
        cross_helicity=cross_helicity(state),
        magnetic_helicity=helicity,
        div_v_max=float(np.max(np.abs(div_staggered(state.v)))),
        div_b_max=float(np.max(np.abs(div_staggered(state.b)))),
        newton_iterations=newton_iterations)


def energy(s: State) -> tuple[float, float]:
    """Kinetic and magnetic energy, ``(1/2)<V,V>`` and ``(1/2)<B,B>``."""
    return 0.5 * dec.pairing(s.v, s.v), 0.5 * dec.pairing(s.b, s.b)


def cross_helicity(s: State) -> float:
    """L2 product of velocity and magnetic field, ``<V,B>``."""
    return dec.pairing(s.v, s.b)


def reconstruct_potential(b: Form1, anchor_value: float = 0.0) -> np.ndarray:
    """Magnetic potential at the dual vertices by path integration.

    Fills the first column with the y-recurrence ``A[i, j+1] = A[i, j]
    + hy * B^x`` and then jumps between rows with ``A[i+1, j] = A[i, j]
    - hx * B^y``; the remaining edges are implied by solenoidality.  The
    anchor ``A[0, 0]`` is set to ``anchor_value``.

    Raises :class:`PotentialInconsistencyError` when the input is not
    divergence-free enough for the result to be path independent.  A
    uniform mismatch on the two wrap seams (a net flux through the box)
    is tolerated; see the module docstring.
    """
    g = b.grid
    bx, by = b.x_values, b.y_values
    a = np.empty(g.shape)
    a[0, 0] = anchor_value
    # first column bottom-to-top, then each row outward from it
    a[0, 1:] = anchor_value + g.hy * np.cumsum(bx[0, :-1])
    a[1:, :] = a[:1, :] - g.hx * np.cumsum(by[:-1, :], axis=0)

    # every non-tree edge must be consistent, seams up to a uniform offset
    defect = Form1(g, "primal",
                   (shift(a, 0, 1) - a) / g.hy - bx,
                   -(shift(a, 1, 0) - a) / g.hx - by)
    scale = max(float(np.max(np.abs(bx))), float(np.max(np.abs(by))), 1e-30)
    tol = 1e-8 * scale * max(g.lx, g.ly)
    dx_seam = defect.x_values[:, -1]
    dy_seam = defect.y_values[-1, :]
    worst = max(
        float(np.max(np.abs(defect.x_values[:, :-1]))),
        float(np.max(np.abs(defect.y_values[:-1, :]))),
        float(np.max(np.abs(dx_seam - dx_seam[0]))),
        float(np.max(np.abs(dy_seam - dy_seam[0]))),
    )
    if worst > tol:
        raise PotentialInconsistencyError(
            f"magnetic field admits no potential: defect {worst:.3e} "
            f"exceeds {tol:.3e}; input is not solenoidal")
    return a


def magnetic_helicity(s: State) -> float:
    """Integral of the anchored snapshot potential, ``hx*hy*sum(A)``.

    Gauge dependent through the anchor; only drifts are physical.  Time
    series use :class:`PotentialTracker` instead, whose gauge follows
    the dynamics.
    """
    g = s.grid
    return g.cell_area * float(np.sum(reconstruct_potential(s.b, 0.0)))


def current_density(b: Form1) -> Form2:
    """Current density ``J = d B`` at the primal cell centres."""
    return dec.d(b)


class PotentialTracker:
    """Evolves the magnetic potential alongside a simulation.

    The induction update is the curl of a cell-centred flux function, so
    the potential update is ``ht`` times that flux; adding it keeps
    ``b_from_potential(A)`` equal to the integrated field to roundoff
    and keeps the helicity integral in the dynamically consistent gauge.
    """

    def __init__(self, initial: State):
        self.grid = initial.grid
        self.a = reconstruct_potential(initial.b, 0.0)

    def update(self, previous: State, current: State, ht: float) -> None:
        vbar = bar_average(EdgePair(previous.v, current.v))
        bbar = bar_average(EdgePair(previous.b, current.b))
        self.a = self.a + ht * flux_function(vbar, bbar)

    @property
    def helicity(self) -> float:
        return self.grid.cell_area * float(np.sum(self.a))


def phase_velocity(probe_series: np.ndarray, ht: float, lx: float) -> float:
    """Phase velocity of the dominant travelling mode of a probe row.

    ``probe_series`` has one row per sample (uniform spacing ``ht``) and
    one column per grid point along x.  The dominant nonzero spatial
    mode is identified from the mean power spectrum; its complex phase
    is unwrapped in time and fitted by least squares, and the slope is
    converted with the mode's wavenumber.

    Raises :class:`NoDominantModeError` when the spectrum has no clear
    peak (below 10x the median bin) or when the mode amplitude collapses
    along the series (standing wave: no travel direction).
    """
    series = np.asarray(probe_series, dtype=float)
    if series.ndim != 2 or series.shape[0] < 4:
        raise ValueError("need a 2D series with at least 4 time samples")
    coeffs = np.fft.rfft(series, axis=1)
    power = np.mean(np.abs(coeffs) ** 2, axis=0)
    if power.shape[0] < 3:
        raise NoDominantModeError("grid too coarse for a mode analysis")
    mode_power = power[1:]
    m = 1 + int(np.argmax(mode_power))
    median = float(np.median(mode_power))
    if median > 0.0 and mode_power[m - 1] < 10.0 * median:
        raise NoDominantModeError(
            f"spectrum peak at mode {m} is below 10x the median bin")
    track = coeffs[:, m]
    amp = np.abs(track)
    if float(np.min(amp)) < 0.05 * float(np.max(amp)):
        raise NoDominantModeError(
            "mode amplitude collapses along the series; standing wave "
            "has no single phase velocity")
    phase = np.unwrap(np.angle(track))
    times = ht * np.arange(series.shape[0])
    slope = np.polynomial.polynomial.polyfit(times, phase, 1)[1]
    k = 2.0 * np.pi * m / lx
    return float(-slope / k)
