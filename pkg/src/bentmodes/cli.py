"""Command-line front end: ``count``, ``modes``, ``profile`` and ``verify``.

Configuration is a flat JSON object::

    {"r1_um": 0.5, "r2_um": 1.5, "b_um": 0.5, "n_w": 2.3, "n_s": 1.0,
     "lambda_nm": 800, "scan_step_m": 0.02, "quadrature_tol": 1e-8,
     "oracle_points": 4001, "physicality_margin": 0.05}

Lengths are in micrometres except the wavelength, which is in nanometres.
Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 unknown mode.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Sequence

from bentmodes.modes import DEFAULT_MARGIN, DEFAULT_QUAD_TOL, ModeRecord, assemble_catalog, field_grid
from bentmodes.oracle import DEFAULT_ORACLE_POINTS, radial_fd_eigen, z_fd_eigen
from bentmodes.radial import DEFAULT_SCAN_STEP, l_max
from bentmodes.slab import Geometry, ZModeSolution, count_z_modes, solve_z_modes

__all__ = [
    "ConfigError",
    "RunConfig",
    "load_config",
    "parse_config",
    "count_report",
    "catalog_rows",
    "catalog_csv",
    "catalog_json",
    "parse_catalog_csv",
    "profile_csv",
    "verify",
    "VerifyReport",
    "main",
    "CSV_COLUMNS",
    "VERIFY_RTOL",
]

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_CONFIG = 2
EXIT_UNKNOWN_MODE = 3

VERIFY_RTOL = 5.0e-3

CSV_COLUMNS = (
    "i",
    "l",
    "paper_parity",
    "beta_w_per_um",
    "beta_s_per_um",
    "h_per_um",
    "m",
    "p_rad",
    "n_eff",
    "r_av_um",
    "physical",
)

_GEOMETRY_FIELDS = ("r1_um", "r2_um", "b_um", "n_w", "n_s", "lambda_nm")
_TUNING_DEFAULTS: dict[str, Any] = {
    "scan_step_m": DEFAULT_SCAN_STEP,
    "quadrature_tol": DEFAULT_QUAD_TOL,
    "oracle_points": DEFAULT_ORACLE_POINTS,
    "physicality_margin": DEFAULT_MARGIN,
}


class ConfigError(ValueError):
    """Invalid or unreadable configuration."""


@dataclass(frozen=True)
class RunConfig:
    geometry: Geometry
    scan_step_m: float = DEFAULT_SCAN_STEP
    quadrature_tol: float = DEFAULT_QUAD_TOL
    oracle_points: int = DEFAULT_ORACLE_POINTS
    physicality_margin: float = DEFAULT_MARGIN

    def __post_init__(self) -> None:
        for name in ("scan_step_m", "quadrature_tol", "physicality_margin"):
            if not getattr(self, name) > 0.0:
                raise ConfigError(f"field '{name}': must be > 0, got {getattr(self, name)!r}")
        if self.oracle_points < 201 or self.oracle_points % 2 == 0:
            raise ConfigError(f"field 'oracle_points': must be an odd integer >= 201, got {self.oracle_points!r}")

    def to_dict(self) -> dict[str, Any]:
        """Effective configuration with every default filled in."""
        g = self.geometry
        return {
            "r1_um": g.r1,
            "r2_um": g.r2,
            "b_um": g.b,
            "n_w": g.n_w,
            "n_s": g.n_s,
            "lambda_nm": g.lambda0 * 1000.0,
            "scan_step_m": self.scan_step_m,
            "quadrature_tol": self.quadrature_tol,
            "oracle_points": self.oracle_points,
            "physicality_margin": self.physicality_margin,
        }


def _number(data: dict, name: str, integer: bool = False) -> float:
    value = data[name]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"field '{name}': expected a number, got {value!r}")
    if integer and not (isinstance(value, int) or float(value).is_integer()):
        raise ConfigError(f"field '{name}': expected an integer, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"field '{name}': must be finite, got {value!r}")
    return int(value) if integer else float(value)


def parse_config(data: Any) -> RunConfig:
    """Validate a decoded JSON object into a :class:`RunConfig`."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = sorted(set(data) - set(_GEOMETRY_FIELDS) - set(_TUNING_DEFAULTS))
    if unknown:
        raise ConfigError(f"unknown field(s): {', '.join(unknown)}")
    missing = [name for name in _GEOMETRY_FIELDS if name not in data]
    if missing:
        raise ConfigError(f"missing field(s): {', '.join(missing)}")
    values = {name: _number(data, name) for name in _GEOMETRY_FIELDS}
    try:
        geometry = Geometry(
            r1=values["r1_um"],
            r2=values["r2_um"],
            b=values["b_um"],
            n_w=values["n_w"],
            n_s=values["n_s"],
            lambda0=values["lambda_nm"] / 1000.0,
        )
    except ValueError as exc:
        raise ConfigError(f"geometry: {exc}") from exc
    tuning = {}
    for name, default in _TUNING_DEFAULTS.items():
        if name in data:
            tuning[name] = _number(data, name, integer=name == "oracle_points")
        else:
            tuning[name] = default
    return RunConfig(geometry=geometry, **tuning)


def load_config(path: str | Path) -> RunConfig:
    """Read and validate a JSON config file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_config(data)


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def count_report(config: RunConfig) -> str:
    g = config.geometry
    zmodes = solve_z_modes(g)
    if not zmodes:
        return "no guided modes"
    n_odd, n_even = count_z_modes(g)
    per_i = " ".join(f"i{zm.index_i}={l_max(zm.h, g)}" for zm in zmodes)
    return f"N_odd={n_odd} N_even={n_even}; l_max: {per_i}"


def _catalog(config: RunConfig, zmodes: list[ZModeSolution] | None = None) -> list[ModeRecord]:
    return assemble_catalog(
        config.geometry,
        scan_step=config.scan_step_m,
        quadrature_tol=config.quadrature_tol,
        physicality_margin=config.physicality_margin,
        zmodes=zmodes,
    )


def catalog_rows(catalog: Sequence[ModeRecord]) -> list[dict[str, Any]]:
    """Records as ordered dicts of already-rounded values (6 significant digits)."""
    rows = []
    for rec in catalog:
        rows.append(
            {
                "i": rec.i,
                "l": rec.l,
                "paper_parity": rec.paper_parity,
                "beta_w_per_um": float(_fmt(rec.beta_w)),
                "beta_s_per_um": float(_fmt(rec.beta_s)),
                "h_per_um": float(_fmt(rec.h)),
                "m": float(_fmt(rec.m)),
                "p_rad": float(_fmt(rec.p)),
                "n_eff": float(_fmt(rec.n_eff)),
                "r_av_um": float(_fmt(rec.r_av)),
                "physical": rec.physical,
            }
        )
    return rows


def _csv_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return _fmt(value)
    return str(value)


def catalog_csv(catalog: Sequence[ModeRecord]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for row in catalog_rows(catalog):
        lines.append(",".join(_csv_cell(row[col]) for col in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def catalog_json(catalog: Sequence[ModeRecord], config: RunConfig) -> str:
    payload = {"config": config.to_dict(), "modes": catalog_rows(catalog)}
    return json.dumps(payload, indent=2) + "\n"


def parse_catalog_csv(text: str) -> list[dict[str, Any]]:
    """Inverse of :func:`catalog_csv`, typed like :func:`catalog_rows`."""
    rows = []
    for raw in csv.DictReader(io.StringIO(text)):
        row: dict[str, Any] = {}
        for col in CSV_COLUMNS:
            cell = raw[col]
            if col in ("i", "l"):
                row[col] = int(cell)
            elif col == "paper_parity":
                row[col] = cell
            elif col == "physical":
                row[col] = cell == "true"
            else:
                row[col] = float(cell)
        rows.append(row)
    return rows


def profile_csv(rec: ModeRecord, g: Geometry, nr: int, nz: int, z_pad: float) -> str:
    grid = field_grid(rec, g, nr, nz, z_pad)
    lines = ["r_um,z_um,E"]
    for iz, z in enumerate(grid.z_samples):
        for ir, r in enumerate(grid.r_samples):
            lines.append(f"{_fmt(r)},{_fmt(z)},{_fmt(grid.values[iz, ir])}")
    return "\n".join(lines) + "\n"


@dataclass
class VerifyReport:
    """Relative disagreements between the analytic catalog and the FD oracles."""

    z_checks: list[tuple[int, float, float, float]]  # (i, h_analytic, h_fd, rel_err)
    radial_checks: list[tuple[int, int, bool, float, float, float]]  # (i, l, physical, h, h_fd, rel_err)
    rtol: float = VERIFY_RTOL

    @property
    def passed(self) -> bool:
        physical_i = {i for i, _, phys, *_ in self.radial_checks if phys}
        z_ok = all(err <= self.rtol for i, _, _, err in self.z_checks if i in physical_i)
        r_ok = all(err <= self.rtol for _, _, phys, _, _, err in self.radial_checks if phys)
        return z_ok and r_ok

    def text(self) -> str:
        lines = ["# z oracle: i h_analytic h_fd rel_err"]
        for i, h, h_fd, err in self.z_checks:
            lines.append(f"z i={i} h={_fmt(h)} h_fd={_fmt(h_fd)} rel_err={err:.3e}")
        lines.append("# radial oracle: i l physical h_analytic h_fd rel_err")
        for i, l, phys, h, h_fd, err in self.radial_checks:
            flag = "physical" if phys else "nonphysical"
            lines.append(f"r i={i} l={l} {flag} h={_fmt(h)} h_fd={_fmt(h_fd)} rel_err={err:.3e}")
        lines.append(f"RESULT {'PASS' if self.passed else 'FAIL'} (rtol={self.rtol:g})")
        return "\n".join(lines) + "\n"


def _perturbed_zmodes(g: Geometry, scale: float) -> list[ZModeSolution]:
    kw2 = (g.k * g.n_w) ** 2
    v2 = g.v_number**2
    out = []
    for zm in solve_z_modes(g):
        beta_w = zm.beta_w * scale
        out.append(
            replace(
                zm,
                beta_w=beta_w,
                beta_s=math.sqrt(max(v2 - beta_w**2, 0.0)),
                h=math.sqrt(kw2 - beta_w**2),
            )
        )
    return out


def verify(config: RunConfig, beta_scale: float = 1.0, catalog: Sequence[ModeRecord] | None = None) -> VerifyReport:
    """Compare the analytic catalog with both FD oracles.

    ``beta_scale`` multiplies every vertical ``beta_w`` before assembly; it
    exists to check that a corrupted catalog is caught.
    """
    g = config.geometry
    if catalog is None:
        zmodes = None if beta_scale == 1.0 else _perturbed_zmodes(g, beta_scale)
        catalog = _catalog(config, zmodes)
    n = config.oracle_points

    z_checks = []
    by_i: dict[int, ModeRecord] = {}
    for rec in catalog:
        by_i.setdefault(rec.i, rec)
    if by_i:
        beta_s_min = min(rec.beta_s for rec in by_i.values())
        half_width = g.z0 + 12.0 / beta_s_min
        h_fd = z_fd_eigen(g, n, half_width)
        for idx, (i, rec) in enumerate(sorted(by_i.items())):
            fd = h_fd[idx] if idx < len(h_fd) else math.nan
            err = abs(fd - rec.h) / rec.h if math.isfinite(fd) else math.inf
            z_checks.append((i, rec.h, fd, err))

    radial_checks = []
    for rec in catalog:
        fd = radial_fd_eigen(rec.m, g, n, count=rec.l)[rec.l - 1]
        radial_checks.append((rec.i, rec.l, rec.physical, rec.h, fd, abs(fd - rec.h) / rec.h))
    return VerifyReport(z_checks, radial_checks)


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bentmodes", description="Eigenmodes of a bent rectangular dielectric waveguide.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", required=True, help="JSON configuration file")
        p.add_argument("--out", default=None, help="output path (default: stdout)")

    common(sub.add_parser("count", help="mode-count estimates"))
    p_modes = sub.add_parser("modes", help="full mode catalog")
    common(p_modes)
    p_modes.add_argument("--format", choices=("json", "csv"), default="csv")
    p_prof = sub.add_parser("profile", help="field of one mode on a grid")
    common(p_prof)
    p_prof.add_argument("--i", type=int, required=True, dest="mode_i")
    p_prof.add_argument("--l", type=int, required=True, dest="mode_l")
    p_prof.add_argument("--nr", type=int, default=200)
    p_prof.add_argument("--nz", type=int, default=200)
    p_prof.add_argument("--z-pad-um", type=float, default=0.25)
    common(sub.add_parser("verify", help="cross-check against finite differences"))
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        config = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if args.command == "count":
        _write(count_report(config) + "\n", args.out)
        return EXIT_OK

    if args.command == "modes":
        catalog = _catalog(config)
        text = catalog_csv(catalog) if args.format == "csv" else catalog_json(catalog, config)
        _write(text, args.out)
        return EXIT_OK

    if args.command == "profile":
        if args.nr < 16 or args.nz < 16:
            print("profile: --nr and --nz must be >= 16", file=sys.stderr)
            return EXIT_CONFIG
        catalog = _catalog(config)
        match = [rec for rec in catalog if rec.i == args.mode_i and rec.l == args.mode_l]
        if not match:
            print(f"profile: mode (i={args.mode_i}, l={args.mode_l}) not in catalog", file=sys.stderr)
            return EXIT_UNKNOWN_MODE
        _write(profile_csv(match[0], config.geometry, args.nr, args.nz, args.z_pad_um), args.out)
        return EXIT_OK

    report = verify(config)
    _write(report.text(), args.out)
    return EXIT_OK if report.passed else EXIT_VERIFY


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
