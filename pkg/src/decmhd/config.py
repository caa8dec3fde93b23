"""Run configuration: text format, schema and validation.

The format is UTF-8 ``key = value`` lines grouped by bracketed sections.
Blank lines and ``#``/``;`` comments are ignored.  Unknown keys are
warnings by default and errors in strict mode; duplicate keys are always
parse errors (reported with both line numbers).

Recognised sections and keys::

    [case]    name, v0, b0, a0, radius, pressure, x1, x2
    [grid]    nx, ny, lx, ly, x0, y0
    [time]    ht, t_end
    [newton]  tol, max_iter, linear_solver, gmres_restart, gmres_tol,
              preconditioner
    [output]  directory, snapshot_every, diag_every

Everything except ``case.name`` has a case-dependent default; the
standard benchmark setups run from a two-line file.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

from . import cases
from .errors import ConfigError
from .grid import Grid, make_grid
from .integrator import NewtonConfig

__all__ = ["RunConfig", "parse_config", "parse_config_file"]


@dataclass(frozen=True)
class RunConfig:
    """Validated parameters of one simulation run."""

    case: cases.CaseSpec
    ht: float
    t_end: float
    newton: NewtonConfig = NewtonConfig()
    output_dir: str = "out"
    snapshot_every: int | None = None   # None: only the final snapshot
    diag_every: int = 1

    def __post_init__(self):
        if not self.ht > 0.0:
            raise ConfigError("ht must be positive")
        if not self.t_end > 0.0:
            raise ConfigError("t_end must be positive")
        if self.snapshot_every is not None and self.snapshot_every < 1:
            raise ConfigError("snapshot_every must be at least 1")
        if self.diag_every < 1:
            raise ConfigError("diag_every must be at least 1")

    @property
    def n_steps(self) -> int:
        return max(1, round(self.t_end / self.ht))

    def grid(self) -> Grid:
        s = self.case
        return make_grid(s.nx, s.ny, s.lx, s.ly, s.x0, s.y0)


_SCHEMA = {
    "case": {"name": str, "v0": float, "b0": float, "a0": float,
             "radius": float, "pressure": float, "x1": float, "x2": float},
    "grid": {"nx": int, "ny": int, "lx": float, "ly": float,
             "x0": float, "y0": float},
    "time": {"ht": float, "t_end": float},
    "newton": {"tol": float, "max_iter": int, "linear_solver": str,
               "gmres_restart": int, "gmres_tol": float,
               "preconditioner": str},
    "output": {"directory": str, "snapshot_every": int, "diag_every": int},
}


def _parse_lines(text: str, strict: bool):
    """Parse the section/key structure, tracking line numbers."""
    seen: dict[tuple[str, str], int] = {}
    values: dict[tuple[str, str], str] = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(("#", ";")):
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"line {lineno}: malformed section header {line!r}")
            section = line[1:-1].strip().lower()
            if section not in _SCHEMA:
                msg = f"line {lineno}: unknown section [{section}]"
                if strict:
                    raise ConfigError(msg)
                warnings.warn(msg, stacklevel=3)
                section = "!ignored"
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        if section is None:
            raise ConfigError(f"line {lineno}: key outside of any [section]")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if section == "!ignored":
            continue
        if key not in _SCHEMA[section]:
            msg = f"line {lineno}: unknown key {key!r} in section [{section}]"
            if strict:
                raise ConfigError(msg)
            warnings.warn(msg, stacklevel=3)
            continue
        if (section, key) in seen:
            raise ConfigError(
                f"duplicate key '{section}.{key}' at lines "
                f"{seen[(section, key)]} and {lineno}")
        seen[(section, key)] = lineno
        values[(section, key)] = value
    return values, seen


def _convert(section: str, key: str, value: str, lineno: int):
    typ = _SCHEMA[section][key]
    try:
        if typ is int:
            return int(value)
        if typ is float:
            return float(value)
        return value
    except ValueError as exc:
        raise ConfigError(
            f"line {lineno}: field '{section}.{key}' expects {typ.__name__}, "
            f"got {value!r}") from exc


def parse_config(text: str, strict: bool = False) -> RunConfig:
    """Parse and validate configuration text into a :class:`RunConfig`.

    Defaults for everything but the case name are filled from the case's
    standard setup.
    """
    raw, lines = _parse_lines(text, strict)
    fields = {sec: {} for sec in _SCHEMA}
    for (section, key), value in raw.items():
        fields[section][key] = _convert(section, key, value, lines[(section, key)])

    case_fields = fields["case"]
    if "name" not in case_fields:
        raise ConfigError("missing required field 'case.name'")
    name = case_fields.pop("name")
    try:
        spec = cases.default_spec(name, **case_fields)
        spec = replace(spec, **fields["grid"])
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc

    time_fields = fields["time"]
    ht = time_fields.get("ht", spec.ht)
    t_end = time_fields.get("t_end")
    if t_end is None:
        raise ConfigError("missing required field 'time.t_end'")

    newton_fields = fields["newton"]
    if "linear_solver" not in newton_fields and spec.nx * spec.ny > 64 * 64:
        # default split: sparse direct up to 64x64, preconditioned GMRES above
        newton_fields["linear_solver"] = "gmres"
    try:
        newton = NewtonConfig(**newton_fields)
    except ValueError as exc:
        raise ConfigError(f"field 'newton': {exc}") from exc

    out = fields["output"]
    return RunConfig(case=spec, ht=ht, t_end=t_end, newton=newton,
                     output_dir=out.get("directory", "out"),
                     snapshot_every=out.get("snapshot_every"),
                     diag_every=out.get("diag_every", 1))


def parse_config_file(path, strict: bool = False) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), strict=strict)
