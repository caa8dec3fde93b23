"""Structure-preserving 2D incompressible ideal MHD on staggered grids.

A discrete-exterior-calculus kernel (:mod:`decmhd.dec`) supplies forms,
chains and the exact structural identities; :mod:`decmhd.operators`
builds the staggered advection/induction stencils on top of it;
:mod:`decmhd.integrator` advances the fields with an implicit-midpoint
step solved by Newton's method.  Energy, cross helicity and magnetic
helicity are conserved to the nonlinear-solver tolerance, and the
staggered divergence of the magnetic field is preserved to roundoff.
"""

__version__ = "0.1.0"

from .grid import Grid, make_grid, wrap
from .dec import (Form0, Form1, Form2, Chain, boundary, integrate, hodge, d,
                  wedge, pairing)
from .operators import (EdgePair, BarField, bar_average, psi_discrete,
                        phi_discrete, div_staggered, grad_pressure)
from .integrator import State, NewtonConfig, StepReport, newton_solve, advance
from .diagnostics import (DiagnosticsRecord, PotentialTracker, energy,
                          cross_helicity, reconstruct_potential,
                          magnetic_helicity, current_density, phase_velocity,
                          sample_record)
from .cases import CaseSpec, default_spec, b_from_potential, build_initial_state
from .config import RunConfig, parse_config, parse_config_file
from .snapshots import read_snapshot, write_snapshot
from .run import run, simulate

__all__ = [
    "Grid", "make_grid", "wrap",
    "Form0", "Form1", "Form2", "Chain",
    "boundary", "integrate", "hodge", "d", "wedge", "pairing",
    "EdgePair", "BarField", "bar_average", "psi_discrete", "phi_discrete",
    "div_staggered", "grad_pressure",
    "State", "NewtonConfig", "StepReport", "newton_solve", "advance",
    "DiagnosticsRecord", "PotentialTracker", "energy", "cross_helicity",
    "reconstruct_potential", "magnetic_helicity", "current_density",
    "phase_velocity", "sample_record",
    "CaseSpec", "default_spec", "b_from_potential", "build_initial_state",
    "RunConfig", "parse_config", "parse_config_file",
    "read_snapshot", "write_snapshot", "run", "simulate",
]
