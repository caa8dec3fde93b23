"""End-to-end checks of the driver and the command line surface."""

import numpy as np
import pytest

from decmhd.cli import main
from decmhd.config import parse_config
from decmhd.run import EXIT_CONFIG, EXIT_IO, EXIT_OK, run
from decmhd.snapshots import read_snapshot

SHORT_ALFVEN = """
[case]
name = alfven

[time]
t_end = 2

[newton]
tol = 1e-12
"""


@pytest.fixture(scope="module")
def short_run(tmp_path_factory):
    outdir = tmp_path_factory.mktemp("short_alfven")
    cfg = parse_config(SHORT_ALFVEN + f"[output]\ndirectory = {outdir}\n")
    assert run(cfg) == EXIT_OK
    return outdir


def test_row_count_and_final_snapshot(short_run):
    rows = (short_run / "diagnostics.csv").read_text().splitlines()
    assert rows[0].startswith("step,t,e_kin,e_mag,e_total,cross_helicity")
    assert len(rows) == 21              # header + one row per step
    assert (short_run / "final.decmhd").exists()
    assert (short_run / "run_metadata.json").exists()
    snapshots = list(short_run.glob("snapshot_*.decmhd"))
    assert snapshots == []              # cadence unset: only the final one


def test_csv_numbers_round_trip(short_run):
    rows = (short_run / "diagnostics.csv").read_text().splitlines()
    first = rows[1].split(",")
    assert float(first[2]) == 1.0 and float(first[4]) == 4.0
    # shortest repr round-trips through float exactly
    for cell in rows[-1].split(",")[1:]:
        assert repr(float(cell)) == cell or float(cell) == int(float(cell))


def test_final_snapshot_time(short_run):
    s = read_snapshot(short_run / "final.decmhd")
    assert s.t == pytest.approx(2.0, abs=1e-12)
    assert s.grid.shape == (32, 32)


def test_snapshot_cadence(tmp_path):
    cfg = parse_config(
        SHORT_ALFVEN
        + f"[output]\ndirectory = {tmp_path}\nsnapshot_every = 10\n")
    assert run(cfg) == EXIT_OK
    names = sorted(p.name for p in tmp_path.glob("snapshot_*.decmhd"))
    assert names == ["snapshot_000010.decmhd", "snapshot_000020.decmhd"]


def test_run_into_unwritable_directory(tmp_path):
    target = tmp_path / "file"
    target.write_text("occupied")
    cfg = parse_config(SHORT_ALFVEN + f"[output]\ndirectory = {target}\n")
    assert run(cfg) == EXIT_IO


def test_cli_check_prints_resolved_config(tmp_path, capsys):
    cfg_file = tmp_path / "run.cfg"
    cfg_file.write_text(SHORT_ALFVEN)
    assert main(["check", str(cfg_file)]) == EXIT_OK
    out = capsys.readouterr().out
    assert '"nx": 32' in out and '"t_end": 2.0' in out


def test_cli_run_and_diag(tmp_path, capsys):
    cfg_file = tmp_path / "run.cfg"
    cfg_file.write_text(SHORT_ALFVEN)
    outdir = tmp_path / "out"
    assert main(["run", str(cfg_file), "--output-dir", str(outdir),
                 "--max-steps", "3"]) == EXIT_OK
    rows = (outdir / "diagnostics.csv").read_text().splitlines()
    assert len(rows) == 4
    assert main(["diag", str(outdir / "final.decmhd")]) == EXIT_OK
    out = capsys.readouterr().out
    assert "e_total" in out and "cross_helicity" in out


def test_cli_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("[case]\nname = alfven\n[time]\nht = 0\nt_end = 1\n")
    assert main(["run", str(bad)]) == EXIT_CONFIG
    assert "ht must be positive" in capsys.readouterr().err
    assert main(["run", str(tmp_path / "missing.cfg")]) == EXIT_CONFIG


def test_cli_strict_flag(tmp_path):
    cfg_file = tmp_path / "run.cfg"
    cfg_file.write_text("[case]\nname = alfven\ntypo = 1\n[time]\nt_end = 1\n")
    assert main(["check", str(cfg_file), "--strict"]) == EXIT_CONFIG


def test_cli_newton_tol_override(tmp_path):
    cfg_file = tmp_path / "run.cfg"
    cfg_file.write_text(SHORT_ALFVEN)
    outdir = tmp_path / "out"
    assert main(["run", str(cfg_file), "--output-dir", str(outdir),
                 "--max-steps", "2", "--newton-tol", "1e-8"]) == EXIT_OK
    rows = (outdir / "diagnostics.csv").read_text().splitlines()
    resnorm = float(rows[1].split(",")[-1])
    assert resnorm <= 1e-8


def test_cli_diag_bad_magic(tmp_path, capsys):
    bogus = tmp_path / "x.decmhd"
    bogus.write_bytes(b"WRONGMAGIC" + b"\0" * 64)
    assert main(["diag", str(bogus)]) == EXIT_IO


def test_energy_conserved_in_short_run(short_run):
    rows = (short_run / "diagnostics.csv").read_text().splitlines()[1:]
    e = np.array([float(r.split(",")[4]) for r in rows])
    assert np.max(np.abs(e - 4.0)) < 1e-11


def test_solver_failure_preserves_partial_outputs(tmp_path):
    from decmhd.run import EXIT_SOLVER
    cfg = parse_config(f"""
[case]
name = orszag_tang

[grid]
nx = 8
ny = 8

[time]
t_end = 1

[newton]
tol = 1e-30
max_iter = 2

[output]
directory = {tmp_path}
""")
    assert run(cfg) == EXIT_SOLVER
    assert (tmp_path / "run_metadata.json").exists()
    assert (tmp_path / "diagnostics.csv").exists()
