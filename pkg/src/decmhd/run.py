"""Run driver: builds the initial state, advances it and serialises output.

Outputs in ``output_dir``:

* ``diagnostics.csv`` — one row per logged step with columns
  ``step, t, e_kin, e_mag, e_total, cross_helicity, magnetic_helicity,
  div_v_max, div_b_max, newton_iters, residual_norm``.  Numbers are
  written with shortest round-trip formatting, so parsing a value back
  yields the exact double that was written and identical runs produce
  bitwise identical files.
* ``snapshot_NNNNNN.decmhd`` at the configured cadence and
  ``final.decmhd`` at the end.
* ``run_metadata.json`` — resolved configuration, gauge conventions and
  solver settings (the only file allowed to contain wall-clock data).

The magnetic-helicity column samples the advected-gauge potential of
:class:`~decmhd.diagnostics.PotentialTracker`; see that module for why
the per-snapshot anchored reconstruction is not used for time series.
"""

from __future__ import annotations

import dataclasses
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .cases import build_initial_state
from .config import RunConfig
from .diagnostics import PotentialTracker, sample_record
from .errors import DecmhdError, NewtonConvergenceError
from .integrator import State, newton_solve
from .snapshots import write_snapshot

__all__ = ["run", "simulate", "EXIT_OK", "EXIT_CONFIG", "EXIT_SOLVER", "EXIT_IO"]

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_SOLVER = 2
EXIT_IO = 3

CSV_COLUMNS = ("step", "t", "e_kin", "e_mag", "e_total", "cross_helicity",
               "magnetic_helicity", "div_v_max", "div_b_max", "newton_iters",
               "residual_norm")


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _csv_row(values) -> str:
    return ",".join(_fmt(v) for v in values) + "\n"


def _diag_values(step: int, state: State, tracker: PotentialTracker,
                 iters: int, resnorm: float):
    rec = sample_record(state, tracker.helicity, iters)
    return (step, rec.t, rec.e_kin, rec.e_mag, rec.e_total,
            rec.cross_helicity, rec.magnetic_helicity,
            rec.div_v_max, rec.div_b_max, rec.newton_iterations, resnorm)


def _metadata(cfg: RunConfig) -> dict:
    return {
        "format": "decmhd-run-metadata",
        "version": __version__,
        "created": datetime.now(timezone.utc).isoformat(),
        "config": {
            "case": dataclasses.asdict(cfg.case),
            "ht": cfg.ht,
            "t_end": cfg.t_end,
            "n_steps": cfg.n_steps,
            "snapshot_every": cfg.snapshot_every,
            "diag_every": cfg.diag_every,
            "newton": dataclasses.asdict(cfg.newton),
        },
        "gauge": {
            "pressure": "mean-free Newton updates",
            "potential_anchor": "A[0, 0] = 0 at t = 0, then advected",
            "helicity_column": "integral of the advected-gauge potential",
        },
    }


def simulate(cfg: RunConfig, on_step=None) -> State:
    """Advance the configured case to ``t_end`` without touching disk.

    ``on_step(step, state, report, tracker)`` is called after every step.
    """
    grid = cfg.grid()
    state = build_initial_state(cfg.case, grid)
    tracker = PotentialTracker(state)
    for step in range(1, cfg.n_steps + 1):
        try:
            new_state, report = newton_solve(state, cfg.ht, cfg.newton)
        except NewtonConvergenceError as exc:
            exc.step = step
            raise
        tracker.update(state, new_state, cfg.ht)
        state = new_state
        if on_step is not None:
            on_step(step, state, report, tracker)
    return state


def run(cfg: RunConfig) -> int:
    """Execute a configured run; returns the process exit status.

    Solver failures preserve the partial outputs and return the solver
    status; I/O problems return the I/O status.
    """
    try:
        outdir = Path(cfg.output_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "run_metadata.json").write_text(
            json.dumps(_metadata(cfg), indent=2) + "\n")
        csv_path = outdir / "diagnostics.csv"
    except OSError as exc:
        print(f"decmhd: cannot prepare output directory: {exc}", file=sys.stderr)
        return EXIT_IO

    status = EXIT_OK
    try:
        with open(csv_path, "w", newline="\n") as csv:
            csv.write(",".join(CSV_COLUMNS) + "\n")

            def on_step(step, state, report, tracker):
                if step % cfg.diag_every == 0 or step == cfg.n_steps:
                    csv.write(_csv_row(_diag_values(
                        step, state, tracker,
                        report.newton_iterations, report.final_residual_norm)))
                if cfg.snapshot_every and step % cfg.snapshot_every == 0:
                    write_snapshot(state, outdir / f"snapshot_{step:06d}.decmhd")
                    csv.flush()

            try:
                final = simulate(cfg, on_step)
            except NewtonConvergenceError as exc:
                print(f"decmhd: solver failed at step {exc.step}: {exc}",
                      file=sys.stderr)
                return EXIT_SOLVER

            write_snapshot(final, outdir / "final.decmhd")
    except OSError as exc:
        print(f"decmhd: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DecmhdError as exc:
        print(f"decmhd: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    return status
