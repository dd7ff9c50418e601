"""Command-line front end.

    linear-dirac spectrum      # E(gamma) curves for both regions (CSV)
    linear-dirac wavefunction  # normalized eigenfunctions vs z (CSV)
    linear-dirac zeromode      # E = 0 components (CSV) + key=value summary
    linear-dirac verify        # closed form vs finite-difference audit (JSON)

Exit codes: 0 success, 2 invalid options, 3 grid warnings under --strict.
"""
from __future__ import annotations

import argparse
import math
import sys
import warnings
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from .errors import DegenerateMatchingError, DomainTooSmallWarning, InvalidParameterError
from .oracle import DEFAULT_HALF_WIDTH, DEFAULT_NMAX, DEFAULT_POINTS, default_grid, verify_levels
from .solution import (
    PotentialParams,
    Region,
    eigenfunction_samples,
    spectrum_sweep,
    zero_mode_components,
    zero_mode_profile,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_STRICT = 3

SPECTRUM_HEADER = "gamma,n,region,E_plus,E_minus,real"
WAVEFUNCTION_HEADER = "z,n,psi,density"
ZEROMODE_HEADER = "x,psi,phi"


class Command(str, Enum):
    SPECTRUM = "spectrum"
    WAVEFUNCTION = "wavefunction"
    ZEROMODE = "zeromode"
    VERIFY = "verify"


@dataclass
class RunConfig:
    command: Command
    params: PotentialParams
    out: Path
    options: dict = field(default_factory=dict)


def fmt(value) -> str:
    """Render a CSV/summary value: 12 significant digits, lowercase booleans."""
    if value is None:
        return "nan"
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".12g")


def _int_list(text: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("list must not be empty")
    if any(v < 0 for v in values):
        raise argparse.ArgumentTypeError("levels must be non-negative")
    return values


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--mass", type=float, default=1.0, help="rest mass m (default 1)")
    shared.add_argument("--c", type=float, default=1.0, help="speed of light (default 1)")
    shared.add_argument("--hbar", type=float, default=1.0, help="reduced Planck constant (default 1)")
    shared.add_argument("--v0", type=float, default=0.0, help="potential offset V0 (default 0)")
    shared.add_argument("--gamma", type=float, default=1.0, help="potential slope (default 1)")
    shared.add_argument("--out", type=Path, default=None, help="output file (default ./out/<command>.csv|.json)")

    parser = argparse.ArgumentParser(
        prog="linear-dirac",
        description="Bound states of a spin-1/2 particle in a linear scalar potential.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[shared], help="energy levels versus gamma")
    sp.add_argument("--gamma-min", type=float, default=0.1)
    sp.add_argument("--gamma-max", type=float, default=2.0)
    sp.add_argument("--gamma-step", type=float, default=0.05)
    sp.add_argument("--levels", type=_int_list, default=[0, 1, 2], help="e.g. 0,1,2")
    sp.add_argument("--region", choices=["both", "pos", "neg"], default="both")

    wf = sub.add_parser("wavefunction", parents=[shared], help="normalized eigenfunctions versus z")
    wf.add_argument("--n", type=_int_list, default=[1, 2, 3], help="e.g. 1,2,3")
    wf.add_argument("--zmin", type=float, default=-12.0)
    wf.add_argument("--zmax", type=float, default=12.0)
    wf.add_argument("--points", type=int, default=1201)

    zm = sub.add_parser("zeromode", parents=[shared], help="zero-energy solutions")
    zm.add_argument("--half-width", type=float, default=5.0, help="sample x on [-L, L]")
    zm.add_argument("--points", type=int, default=201)

    vf = sub.add_parser("verify", parents=[shared], help="audit closed-form levels against a grid")
    vf.add_argument("--nmax", type=int, default=DEFAULT_NMAX)
    vf.add_argument("--grid-points", type=int, default=DEFAULT_POINTS, help="odd number of grid nodes")
    vf.add_argument(
        "--half-width",
        type=float,
        default=DEFAULT_HALF_WIDTH,
        help="grid half-width in oscillator lengths alpha1**(-1/4)",
    )
    vf.add_argument("--strict", action="store_true", help="exit 3 on domain-too-small warnings")
    return parser


def _odd_points(value: int, name: str) -> None:
    if value < 3 or value % 2 == 0:
        raise InvalidParameterError(f"{name} must be an odd integer >= 3, got {value}")


def _finite(**values: float) -> None:
    for name, v in values.items():
        if not math.isfinite(v):
            raise InvalidParameterError(f"{name} must be finite, got {v}")


def make_config(args: argparse.Namespace) -> RunConfig:
    """Validate every option; raises InvalidParameterError before any computation."""
    command = Command(args.command)
    params = PotentialParams(m=args.mass, c=args.c, hbar=args.hbar, V0=args.v0, gamma=args.gamma)
    suffix = ".json" if command is Command.VERIFY else ".csv"
    out = args.out if args.out is not None else Path("out") / f"{command.value}{suffix}"
    opts: dict = {}

    if command is Command.SPECTRUM:
        _finite(gamma_min=args.gamma_min, gamma_max=args.gamma_max, gamma_step=args.gamma_step)
        if args.gamma_step <= 0:
            raise InvalidParameterError("--gamma-step must be positive")
        if args.gamma_max < args.gamma_min:
            raise InvalidParameterError("--gamma-max must not be below --gamma-min")
        count = int(math.floor((args.gamma_max - args.gamma_min) / args.gamma_step + 1e-9)) + 1
        gammas = [round(args.gamma_min + i * args.gamma_step, 12) for i in range(count)]
        if any(g == 0 for g in gammas):
            raise InvalidParameterError("gamma range must not contain 0")
        regions = {
            "both": [Region.POSITIVE_X, Region.NEGATIVE_X],
            "pos": [Region.POSITIVE_X],
            "neg": [Region.NEGATIVE_X],
        }[args.region]
        opts.update(gammas=gammas, levels=args.levels, regions=regions)
    elif command is Command.WAVEFUNCTION:
        _finite(zmin=args.zmin, zmax=args.zmax)
        if args.zmax <= args.zmin:
            raise InvalidParameterError("--zmax must exceed --zmin")
        _odd_points(args.points, "--points")
        opts.update(levels=args.n, zmin=args.zmin, zmax=args.zmax, points=args.points)
    elif command is Command.ZEROMODE:
        _finite(half_width=args.half_width)
        if args.half_width <= 0:
            raise InvalidParameterError("--half-width must be positive")
        _odd_points(args.points, "--points")
        opts.update(half_width=args.half_width, points=args.points)
    else:
        _finite(half_width=args.half_width)
        if args.nmax < 0:
            raise InvalidParameterError("--nmax must be non-negative")
        if args.half_width <= 0:
            raise InvalidParameterError("--half-width must be positive")
        _odd_points(args.grid_points, "--grid-points")
        if args.grid_points < 2 * args.nmax + 4:
            raise InvalidParameterError("--grid-points too small for the requested --nmax")
        opts.update(n_max=args.nmax, grid_points=args.grid_points, half_width=args.half_width, strict=args.strict)
    return RunConfig(command, params, out, opts)


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _csv(header: str, rows) -> str:
    lines = [header] + [",".join(fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def cmd_spectrum(config: RunConfig) -> int:
    o = config.options
    sweeps = {r: spectrum_sweep(o["levels"], o["gammas"], r, config.params) for r in o["regions"]}
    per_gamma = len(o["levels"])
    rows = []
    for gi, gamma in enumerate(o["gammas"]):
        for ni, n in enumerate(o["levels"]):
            for region in o["regions"]:
                level = sweeps[region][gi * per_gamma + ni].level
                e_minus = None if level.energy is None else -level.energy
                rows.append((gamma, n, region.value, level.energy, e_minus, level.real_flag))
    _write(config.out, _csv(SPECTRUM_HEADER, rows))
    return EXIT_OK


def cmd_wavefunction(config: RunConfig) -> int:
    o = config.options
    z = np.linspace(o["zmin"], o["zmax"], o["points"])
    rows = []
    for n in o["levels"]:
        samples = eigenfunction_samples(n, z, config.params)
        rows.extend(zip(samples.positions, [n] * z.size, samples.upper, samples.density))
    _write(config.out, _csv(WAVEFUNCTION_HEADER, rows))
    return EXIT_OK


def zeromode_summary(config: RunConfig) -> str:
    profile = zero_mode_profile(config.params)
    entries = [
        ("psi_normalizable_pos", profile.psi_normalizable_pos),
        ("psi_normalizable_neg", profile.psi_normalizable_neg),
        ("phi_normalizable_pos", profile.phi_normalizable_pos),
        ("phi_normalizable_neg", profile.phi_normalizable_neg),
        ("norm_numeric", profile.norm_numeric),
        ("norm_closed_form", profile.norm_closed_form),
        ("closed_form_invalid", profile.closed_form_invalid),
        ("exponent_positive", " ".join(fmt(v) for v in profile.exponent_positive)),
        ("exponent_negative", " ".join(fmt(v) for v in profile.exponent_negative)),
    ]
    return "".join(f"{k}={fmt(v)}\n" for k, v in entries)


def cmd_zeromode(config: RunConfig) -> int:
    o = config.options
    x = np.linspace(-o["half_width"], o["half_width"], o["points"])
    psi, phi = zero_mode_components(x, config.params)
    _write(config.out, _csv(ZEROMODE_HEADER, zip(x, psi, phi)))
    sys.stdout.write(zeromode_summary(config))
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    o = config.options
    grid = default_grid(config.params, o["half_width"], o["grid_points"])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DomainTooSmallWarning)
        report = verify_levels(config.params, o["n_max"], grid)
    _write(config.out, report.to_json())

    out = sys.stdout
    out.write(f"grid: half_width={fmt(grid.half_width)} points={grid.points}\n")
    for rec in report.levels:
        out.write(
            f"{rec.region.value:9s} n={rec.n} formula E^2={fmt(rec.formula_E_squared):>14s} "
            f"oracle E^2={fmt(rec.oracle_E_squared):>14s} -> {rec.classification.value}\n"
        )
    pc = report.to_dict()["partner_check"]
    out.write(f"partner shift={fmt(pc['shift'])} (expected {fmt(pc['expected_shift'])})\n")
    for msg in report.warnings:
        out.write(f"warning: {msg}\n")
    out.write(f"report written to {config.out}\n")
    if o["strict"] and report.warnings:
        return EXIT_STRICT
    return EXIT_OK


COMMANDS = {
    Command.SPECTRUM: cmd_spectrum,
    Command.WAVEFUNCTION: cmd_wavefunction,
    Command.ZEROMODE: cmd_zeromode,
    Command.VERIFY: cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = make_config(args)
    except InvalidParameterError as exc:
        parser.error(str(exc))
    try:
        return COMMANDS[config.command](config)
    except (InvalidParameterError, DegenerateMatchingError) as exc:
        sys.stderr.write(f"linear-dirac {config.command.value}: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
