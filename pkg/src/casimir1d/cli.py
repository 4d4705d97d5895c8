"""Command-line front end: config-driven force, sweep, spectrum, theta and check runs.

Exit codes: 0 ok, 2 config error (syntax, semantics, or a non-passive mirror
handed to a force computation), 3 numeric accuracy failure, 4 bound
violation.  Code 4 is deliberately distinct: the perfect-mirror and
attraction bounds are theorems for passive mirrors, so tripping one from a
valid config signals an implementation bug (for the `check` subcommand it
reports the located passivity violation of the supplied mirror).

The default quadrature tolerance can be overridden with --tol or the
CASIMIR_REL_TOL environment variable.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .config import parse_config
from .errors import AccuracyError, CasimirError, ConfigError, UnstableCavityError
from .force import ForceResult, force_imag, fresnel_scale, sweep_force, theta_static
from .quadrature import QuadratureSpec
from .scattering import check_passivity
from .spectral import spectrum, theta_dispersion

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ACCURACY = 3
EXIT_BOUND = 4

_FORCE_COLUMNS = ("tau", "force", "error_estimate", "force_perfect", "ratio",
                  "within_perfect_bound", "attractive")
_SPECTRUM_COLUMNS = ("omega", "g", "re_f", "im_f", "density")
_THETA_COLUMNS = ("mirror", "theta_static", "theta_dispersion")
_CHECK_COLUMNS = ("mirror", "passed", "min_eigenvalue", "worst_point_re", "worst_point_im",
                  "max_abs_reflection")


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17e}"
    return str(value)


def emit(rows, columns, fmt, out_path=None):
    """Render result rows as CSV or structured JSON; byte-identical across runs."""
    if fmt == "csv":
        lines = [",".join(columns)]
        lines += [",".join(_fmt(row[c]) for c in columns) for row in rows]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps([{c: row[c] for c in columns} for row in rows], indent=2) + "\n"
    data = text.encode()
    if out_path is None or out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "wb") as fh:
            fh.write(data)
    return data


def _force_row(tau, result: ForceResult):
    return {
        "tau": tau,
        "force": result.force,
        "error_estimate": result.error_estimate,
        "force_perfect": result.force_perfect,
        "ratio": result.ratio,
        "within_perfect_bound": result.within_perfect_bound,
        "attractive": result.attractive,
    }


def _quad_spec(args):
    tol = args.tol
    if tol is None:
        tol = float(os.environ.get("CASIMIR_REL_TOL", 1e-10))
    return QuadratureSpec(rel_tol=tol, max_subdivisions=args.max_subdivisions, u_max=args.u_max)


def _cmd_force(args, config):
    cavity = config.cavity()
    result = force_imag(cavity, _quad_spec(args))
    row = _force_row(config.tau, result)
    if args.fresnel is not None:
        row["force_fresnel"] = fresnel_scale(result.force, args.fresnel)
        row["fresnel_number"] = float(args.fresnel)
    columns = tuple(row.keys())
    print(f"force {result.force:.10e} ({result.units})")
    print(f"force_perfect {result.force_perfect:.10e}")
    print(f"ratio {result.ratio:.10f}")
    print(f"within_perfect_bound {_fmt(result.within_perfect_bound)}"
          f" attractive {_fmt(result.attractive)}")
    if args.fresnel is not None:
        print(f"force_fresnel {row['force_fresnel']:.10e} (qualitative 4D estimate,"
              f" fresnel_number {args.fresnel:g})")
    if args.out:
        emit([row], columns, args.format, args.out)
    return EXIT_BOUND if not result.within_perfect_bound else EXIT_OK


def _tau_grid(args):
    if args.tau_steps < 2 or not 0 < args.tau_min < args.tau_max:
        raise ConfigError("need 0 < --tau-min < --tau-max and --tau-steps >= 2")
    if args.log:
        return list(np.geomspace(args.tau_min, args.tau_max, args.tau_steps))
    return list(np.linspace(args.tau_min, args.tau_max, args.tau_steps))


def _cmd_sweep(args, config):
    cavity = config.cavity()
    result = sweep_force(cavity, _tau_grid(args), _quad_spec(args))
    rows, status = [], EXIT_OK
    for entry in result.entries:
        if entry.result is None:
            print(f"tau {entry.tau:g}: {entry.error}", file=sys.stderr)
            status = EXIT_ACCURACY
        else:
            rows.append(_force_row(entry.tau, entry.result))
            if not entry.result.within_perfect_bound:
                status = EXIT_BOUND
    emit(rows, _FORCE_COLUMNS, args.format, args.out)
    return status


def _omega_grid(args):
    if args.omega_steps < 2 or not 0 < args.omega_min < args.omega_max:
        raise ConfigError("need 0 < --omega-min < --omega-max and --omega-steps >= 2")
    return list(np.linspace(args.omega_min, args.omega_max, args.omega_steps))


def _cmd_spectrum(args, config):
    cavity = config.cavity()
    samples = spectrum(cavity, _omega_grid(args))
    rows, status = [], EXIT_OK
    for s in samples:
        if s.error is not None:
            print(f"omega {s.omega:g}: {s.error}", file=sys.stderr)
            status = EXIT_ACCURACY
            continue
        rows.append({"omega": s.omega, "g": s.g, "re_f": s.loop_f.real,
                     "im_f": s.loop_f.imag, "density": s.density})
    emit(rows, _SPECTRUM_COLUMNS, args.format, args.out)
    return status


def _cmd_theta(args, config):
    rows = []
    for name, mirror in (("mirror1", config.mirror1), ("mirror2", config.mirror2)):
        try:
            static = theta_static(mirror)
        except (CasimirError, ValueError) as exc:
            raise ConfigError(str(exc), f"cavity.{name}") from exc
        try:
            dispersion = theta_dispersion(mirror)
        except CasimirError:
            dispersion = math.nan  # imaginary-axis-only models have no bandwidth form
        rows.append({"mirror": name, "theta_static": static, "theta_dispersion": dispersion})
        print(f"{name}: theta_static {static:.10e} theta_dispersion {dispersion:.10e}")
    if args.out:
        emit(rows, _THETA_COLUMNS, args.format, args.out)
    return EXIT_OK


def _cmd_check(args, config):
    rows, status = [], EXIT_OK
    for name, mirror in (("mirror1", config.mirror1), ("mirror2", config.mirror2)):
        report = check_passivity(mirror)
        rows.append({
            "mirror": name,
            "passed": report.passed,
            "min_eigenvalue": report.min_eigenvalue,
            "worst_point_re": float(np.real(report.worst_point)),
            "worst_point_im": float(np.imag(report.worst_point)),
            "max_abs_reflection": report.max_abs_reflection,
        })
        verdict = "pass" if report.passed else "FAIL"
        print(f"{name}: {verdict} (min eigenvalue {report.min_eigenvalue:.3e}"
              f" at p = {report.worst_point}, max |r| = {report.max_abs_reflection:.6f})")
        if not report.passed:
            status = EXIT_BOUND
    if args.out:
        emit(rows, _CHECK_COLUMNS, args.format, args.out)
    return status


_COMMANDS = {
    "force": _cmd_force,
    "sweep": _cmd_sweep,
    "spectrum": _cmd_spectrum,
    "theta": _cmd_theta,
    "check": _cmd_check,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="casimir",
        description="Casimir force between frequency-dependent mirrors (1D scalar field).",
    )
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("--config", required=True, help="path to the cavity config file")
    parser.add_argument("--tol", type=float, default=None,
                        help="quadrature relative tolerance (default 1e-10 or $CASIMIR_REL_TOL)")
    parser.add_argument("--max-subdivisions", type=int, default=400)
    parser.add_argument("--u-max", type=float, default=60.0)
    parser.add_argument("--tau-min", type=float, default=0.5)
    parser.add_argument("--tau-max", type=float, default=2.0)
    parser.add_argument("--tau-steps", type=int, default=16)
    parser.add_argument("--log", action="store_true", help="logarithmic tau grid")
    parser.add_argument("--omega-min", type=float, default=0.5)
    parser.add_argument("--omega-max", type=float, default=20.0)
    parser.add_argument("--omega-steps", type=int, default=256)
    parser.add_argument("--format", choices=("csv", "structured"), default="csv")
    parser.add_argument("--out", default=None, help="output path ('-' for stdout)")
    parser.add_argument("--fresnel", type=float, default=None,
                        help="multiply the force by this Fresnel number (4D estimate)")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        config = parse_config(text, allow_gain=(args.command == "check"))
        return _COMMANDS[args.command](args, config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except UnstableCavityError as exc:
        print(f"config error (non-passive or unstable cavity): {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except AccuracyError as exc:
        print(f"accuracy error: {exc}", file=sys.stderr)
        return EXIT_ACCURACY
    except OSError as exc:
        print(f"output error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
