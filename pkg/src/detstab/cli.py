"""Command-line interface.

Subcommands
-----------
profile    integrate a wave profile, emit CSV ``xi,zbar,ubar,ubar_xi``
criterion  log-slope stability test, print a JSON report
curve      critical activation energy over q/omega, CSV plus optional figures
sturm      reduction coefficients along a profile, CSV with the sign field
evans      Evans-Lopatinsky determinant at one lam, or a winding certificate
sweep      full-grid Arrhenius sweep with JSON/CSV reports and figures

Exit status: 0 on success, 1 on a domain error (invalid parameters or an
infeasible request), 2 on usage errors.  All numeric output uses full
round-trip decimal formatting.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

import numpy as np

from . import __version__
from .config import load_config, parse_ignition_spec
from .criterion import check_criterion, critical_activation_energy
from .errors import DomainError
from .evans import EigenSystem, evans_determinant, winding_count
from .grids import grid_by_name
from .model import TEMPERATURE_PROFILES, IgnitionFunction, ModelParams
from .profile import solve_profile
from .sturm import sl_coefficients
from .svg import curve_figure, emit_figure, write_svg
from .sweep import run_sweep


def _add_model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON/TOML file with q, omega, ignition")
    p.add_argument("--q", type=float, help="rescaled heat release")
    p.add_argument("--omega", type=float, default=1.0, help="speed ratio in (0, 1]")
    p.add_argument("--ignition", help="ignition spec, e.g. step:1.2 or "
                                      "arrhenius:E=5,T=t1,C=normalized")


def _model_from_args(args) -> tuple[ModelParams, IgnitionFunction]:
    if args.config:
        params, phi = load_config(args.config)
        if args.ignition:
            phi = parse_ignition_spec(args.ignition)
        return params, phi
    if args.q is None or args.ignition is None:
        raise DomainError("need either --config or both --q and --ignition")
    return ModelParams(q=args.q, omega=args.omega), parse_ignition_spec(args.ignition)


def _open_out(path: Optional[str]):
    return open(path, "w", encoding="utf-8") if path else sys.stdout


def _cmd_profile(args) -> int:
    params, phi = _model_from_args(args)
    table = solve_profile(params, phi, L=args.length, tol=args.tol)
    out = _open_out(args.out)
    try:
        table.to_csv(out)
    finally:
        if out is not sys.stdout:
            out.close()
    if args.png:
        from .plots import render_profile
        render_profile(table, args.png)
    return 0


def _cmd_criterion(args) -> int:
    params, phi = _model_from_args(args)
    report = check_criterion(params, phi)
    print(json.dumps(report.to_dict(), indent=2))
    return 0


def _default_figure_path(out: Optional[str], explicit: Optional[str],
                         suppress: bool) -> Optional[str]:
    """Figure path for the report path: explicit --png wins; otherwise a
    figure is rendered next to the delimited output unless suppressed."""
    if explicit:
        return explicit
    if suppress or not out:
        return None
    stem, _, _ = out.rpartition(".")
    return (stem or out) + ".png"


def _cmd_curve(args) -> int:
    temp = args.temperature.lower()
    if temp not in TEMPERATURE_PROFILES:
        raise DomainError(f"unknown temperature profile {args.temperature!r}")
    rs = np.linspace(args.r_min, args.r_max, args.samples)
    samples = [(float(r), critical_activation_energy(float(r),
                                                     TEMPERATURE_PROFILES[temp]))
               for r in rs]
    out = _open_out(args.out)
    try:
        out.write("q_over_omega,E_star\n")
        for r, e in samples:
            out.write(f"{r!r},{e!r}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    if args.svg:
        write_svg(curve_figure(samples), args.svg)
    png = _default_figure_path(args.out, args.png, args.no_figure)
    if png:
        from .plots import render_curve
        render_curve(samples, png, temperature=temp)
    return 0


def _cmd_sturm(args) -> int:
    params, phi = _model_from_args(args)
    table = solve_profile(params, phi, L=args.length, tol=args.tol)
    coeffs = sl_coefficients(params, table, phi)
    out = _open_out(args.out)
    try:
        out.write("xi,f1,f2,f3,f4,sign_field\n")
        for row in zip(coeffs.xi, coeffs.f1, coeffs.f2, coeffs.f3,
                       coeffs.f4, coeffs.sign_field):
            out.write(",".join(repr(float(v)) for v in row) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise DomainError(f"cannot parse lam value {text!r}; use e.g. 0.5+2i") from None


def _cmd_evans(args) -> int:
    params, phi = _model_from_args(args)
    table = solve_profile(params, phi, L=args.length, tol=args.tol)
    system = EigenSystem(params, phi, table)
    if args.count:
        cert = winding_count(system, table, R=args.radius, r0=args.inner,
                             include_origin=args.include_origin)
        print(json.dumps(cert.to_dict(), indent=2))
        return 0
    if args.lam is None:
        raise DomainError("evans needs either --lambda or --count")
    result = evans_determinant(system, table, _parse_complex(args.lam))
    print(json.dumps({
        "lambda": [result.lam.real, result.lam.imag],
        "delta": [result.delta.real, result.delta.imag],
        "gauge_log": result.gauge_log,
    }, indent=2))
    return 0


def _cmd_sweep(args) -> int:
    grid = grid_by_name(args.grid)
    report = run_sweep(grid, temperature=args.temperature, jobs=args.jobs)
    if args.out:
        report.to_json(args.out)
    else:
        print(report.to_json())
    if args.csv:
        report.to_csv(args.csv)
    png = _default_figure_path(args.out, args.png, args.no_figure)
    curve = ()
    if args.svg or png:
        temp = TEMPERATURE_PROFILES[report.temperature]
        rs = np.linspace(0.005, 0.495, 200)
        curve = [(float(r), critical_activation_energy(float(r), temp)) for r in rs]
    if args.svg:
        write_svg(emit_figure(report, curve), args.svg)
    if png:
        from .plots import render_sweep
        render_sweep(report, png, curve)
    totals = {"points": report.n_points, "satisfied": report.n_satisfied,
              "satisfied_strict": report.n_satisfied_strict}
    print(json.dumps({"grid": report.grid, "totals": totals}), file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="detstab",
        description="Strong detonation wave profiles and spectral stability "
                    "for the rescaled inviscid Majda model.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="integrate a wave profile, emit CSV")
    _add_model_args(p)
    p.add_argument("--length", type=float, help="truncation length L")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--png", help="also render the profile to this PNG")
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("criterion", help="log-slope stability test (JSON report)")
    _add_model_args(p)
    p.set_defaults(func=_cmd_criterion)

    p = sub.add_parser("curve", help="critical activation energy over q/omega")
    p.add_argument("--temperature", default="t1", help="t1 or t2")
    p.add_argument("--r-min", type=float, default=0.005)
    p.add_argument("--r-max", type=float, default=0.495)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--svg", help="write a deterministic SVG figure here")
    p.add_argument("--png", help="raster figure path (default: next to --out)")
    p.add_argument("--no-figure", action="store_true",
                   help="skip the raster figure next to --out")
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("sturm", help="reduction coefficients and sign field (CSV)")
    _add_model_args(p)
    p.add_argument("--length", type=float)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=_cmd_sturm)

    p = sub.add_parser("evans", help="determinant value or winding certificate")
    _add_model_args(p)
    p.add_argument("--length", type=float)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--lambda", dest="lam", help="complex value, e.g. 0.5+2i")
    p.add_argument("--count", action="store_true", help="winding certificate")
    p.add_argument("--radius", type=float, help="outer contour radius R")
    p.add_argument("--inner", type=float, default=1e-3, help="inner radius r0")
    p.add_argument("--include-origin", action="store_true",
                   help="count the translational zero too")
    p.set_defaults(func=_cmd_evans)

    p = sub.add_parser("sweep", help="full-grid Arrhenius criterion sweep")
    p.add_argument("--grid", required=True, help="bz-t1 or bz-t2")
    p.add_argument("--temperature", help="override the grid's temperature pairing")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--out", help="JSON report path (default stdout)")
    p.add_argument("--csv", help="CSV report path")
    p.add_argument("--svg", help="deterministic SVG figure path")
    p.add_argument("--png", help="raster figure path (default: next to --out)")
    p.add_argument("--no-figure", action="store_true",
                   help="skip the raster figure next to --out")
    p.set_defaults(func=_cmd_sweep)

    return ap


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
