#!/usr/bin/env python3
"""Regenerate the frontend test fixtures from the decmhd package.

Produces, in this directory:

* ``alfven_diag.csv`` and ``alfven_final.decmhd`` - a short travelling
  wave run through the regular run driver;
* ``small.decmhd`` - a 12x10 snapshot built from a random potential;
* ``expected.json`` - the primary implementation's potential and
  current arrays for both snapshots, which the TypeScript side must
  match to 1e-12.

Run from the repository root with the package installed:

    python3 frontend/fixtures/generate.py
"""

import json
from pathlib import Path

import numpy as np

from decmhd import Form1, State, make_grid
from decmhd.cases import b_from_potential
from decmhd.config import parse_config
from decmhd.diagnostics import current_density, reconstruct_potential
from decmhd.run import run
from decmhd.snapshots import read_snapshot, write_snapshot

HERE = Path(__file__).parent


def alfven_fixture():
    # the full travelling-wave benchmark configuration (t = 20, tol 1e-12)
    cfg = parse_config(f"""
[case]
name = alfven

[time]
t_end = 20

[newton]
tol = 1e-12

[output]
directory = {HERE / '_tmp_run'}
""")
    assert run(cfg) == 0
    outdir = HERE / "_tmp_run"
    (HERE / "alfven_diag.csv").write_bytes((outdir / "diagnostics.csv").read_bytes())
    (HERE / "alfven_final.decmhd").write_bytes((outdir / "final.decmhd").read_bytes())
    for child in outdir.iterdir():
        child.unlink()
    outdir.rmdir()
    return read_snapshot(HERE / "alfven_final.decmhd")


def small_fixture():
    rng = np.random.default_rng(12345)
    grid = make_grid(12, 10, 1.5, 2.5, -0.75, 0.5)
    a = rng.standard_normal(grid.shape)
    b = b_from_potential(a, grid)
    v = Form1(grid, "primal", rng.standard_normal(grid.shape),
              rng.standard_normal(grid.shape))
    state = State(v=v, b=b, p=rng.standard_normal(grid.shape), t=0.375)
    write_snapshot(state, HERE / "small.decmhd")
    return state


def expectations(state, name):
    return {
        f"{name}_potential": reconstruct_potential(state.b, 0.0).tolist(),
        f"{name}_current": current_density(state.b).values.tolist(),
    }


def main():
    final = alfven_fixture()
    small = small_fixture()
    expected = {}
    expected.update(expectations(final, "alfven"))
    expected.update(expectations(small, "small"))
    (HERE / "expected.json").write_text(json.dumps(expected) + "\n")
    print("fixtures written to", HERE)


if __name__ == "__main__":
    main()
