"""Command line interface.

Subcommands::

    decmhd run <config>     advance the configured case, write outputs
    decmhd check <config>   validate and print the resolved configuration
    decmhd diag <snapshot>  print the conserved quantities of a snapshot

Exit status: 0 ok, 1 configuration error, 2 solver failure, 3 i/o error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import __version__
from .config import RunConfig, parse_config_file
from .diagnostics import cross_helicity, energy, magnetic_helicity
from .errors import ConfigError, DecmhdError, SnapshotFormatError
from .operators import div_staggered
from .run import EXIT_CONFIG, EXIT_IO, EXIT_OK, run
from .snapshots import read_snapshot

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="decmhd",
        description="Structure-preserving 2D incompressible ideal MHD solver")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config_flags(p):
        p.add_argument("config", help="run configuration file")
        p.add_argument("--strict", action="store_true",
                       help="treat unknown configuration keys as errors")
        p.add_argument("--output-dir", help="override the output directory")
        p.add_argument("--newton-tol", type=float,
                       help="override the Newton tolerance")
        p.add_argument("--max-steps", type=int,
                       help="stop after this many steps")

    add_config_flags(sub.add_parser("run", help="run a simulation"))
    add_config_flags(sub.add_parser("check", help="validate a configuration"))

    diag = sub.add_parser("diag", help="conserved quantities of a snapshot")
    diag.add_argument("snapshot", help="DECMHD01 snapshot file")
    return parser


def _load_config(args) -> RunConfig:
    cfg = parse_config_file(args.config, strict=args.strict)
    updates = {}
    if args.output_dir is not None:
        updates["output_dir"] = args.output_dir
    if args.newton_tol is not None:
        updates["newton"] = dataclasses.replace(cfg.newton, tol=args.newton_tol)
    if args.max_steps is not None:
        updates["t_end"] = args.max_steps * cfg.ht
    return dataclasses.replace(cfg, **updates) if updates else cfg


def _cmd_check(cfg: RunConfig) -> int:
    resolved = {
        "case": dataclasses.asdict(cfg.case),
        "ht": cfg.ht,
        "t_end": cfg.t_end,
        "n_steps": cfg.n_steps,
        "newton": dataclasses.asdict(cfg.newton),
        "output_dir": cfg.output_dir,
        "snapshot_every": cfg.snapshot_every,
        "diag_every": cfg.diag_every,
    }
    json.dump(resolved, sys.stdout, indent=2)
    print()
    return EXIT_OK


def _cmd_diag(path: str) -> int:
    state = read_snapshot(path)
    e_kin, e_mag = energy(state)
    print(f"t               = {state.t!r}")
    print(f"e_kin           = {e_kin!r}")
    print(f"e_mag           = {e_mag!r}")
    print(f"e_total         = {e_kin + e_mag!r}")
    print(f"cross_helicity  = {cross_helicity(state)!r}")
    print(f"magnetic_helicity = {magnetic_helicity(state)!r} (anchored gauge)")
    import numpy as np
    print(f"div_v_max       = {float(np.max(np.abs(div_staggered(state.v)))):.3e}")
    print(f"div_b_max       = {float(np.max(np.abs(div_staggered(state.b)))):.3e}")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "diag":
            return _cmd_diag(args.snapshot)
        cfg = _load_config(args)
        if args.command == "check":
            return _cmd_check(cfg)
        return run(cfg)
    except (ConfigError, FileNotFoundError) as exc:
        print(f"decmhd: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SnapshotFormatError as exc:
        print(f"decmhd: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"decmhd: {exc}", file=sys.stderr)
        return EXIT_IO
    except DecmhdError as exc:
        print(f"decmhd: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
