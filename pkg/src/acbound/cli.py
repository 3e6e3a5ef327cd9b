"""Command-line front end emitting reproducible CSV/JSON tables.

Every output embeds a run manifest (command, parameters, tool version, unit
system, timestamp); CSV files carry it as '#'-prefixed header lines, JSON
documents under a "manifest" key. CSV bodies are byte-identical across
repeated runs (floats are written with shortest round-trip repr); only the
manifest timestamp varies.

Exit codes: 0 success, 2 constraint/validation failure, 3 I/O failure,
4 numerical precision failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .errors import AcBoundError, PrecisionError
from .groundstate import (
    build_ground_state,
    density,
    figure1_profile,
    probability_window,
    ratio_outside_inside,
)
from .model import (
    ALL_SECTORS,
    Component,
    CylinderConfig,
    SectorLabel,
    check_unbroken_susy,
    lambda_min_si,
)
from .oracle import FdGrid, fd_eigenvalues
from .spectrum import RadialProblem, scan_spectrum

EXIT_OK = 0
EXIT_CONSTRAINT = 2
EXIT_IO = 3
EXIT_PRECISION = 4


def _manifest(command: str, parameters: dict, unit_system: str = "natural_r0") -> dict:
    return {
        "command": command,
        "parameters": {k: parameters[k] for k in sorted(parameters)},
        "tool_version": __version__,
        "unit_system": unit_system,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _resolve_out(path: str | None, default_name: str) -> Path | None:
    if path is None:
        base = os.environ.get("ACBOUND_OUT_DIR")
        if base is None:
            return None  # stdout
        return Path(base) / default_name
    return Path(path)


def _write_csv(path: Path | None, manifest: dict, columns: list[str], rows) -> None:
    lines = []
    lines.append(f"# command: {manifest['command']}")
    lines.append(f"# tool_version: {manifest['tool_version']}")
    lines.append(f"# unit_system: {manifest['unit_system']}")
    lines.append(f"# timestamp: {manifest['timestamp']}")
    for key, value in manifest["parameters"].items():
        lines.append(f"# param {key}: {value}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(x) for x in row))
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")


def _write_json(path: Path | None, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")


def _require_b_above_one(b: float) -> None:
    if b <= 1.0:
        sys.stderr.write(
            f"constraint violated: a normalizable ground state requires beta*r0^2 > 1; "
            f"got b = {b:g} (margin {b - 1.0:g})\n"
        )
        raise SystemExit(EXIT_CONSTRAINT)


def _ground_state_payload(b: float, r0: float, grid_points: int) -> tuple[dict, list]:
    cfg = CylinderConfig.from_b(b, r0=r0)
    gs = build_ground_state(cfg)
    x = np.linspace(0.0, 5.0, grid_points)
    dens = density(gs, x * r0)
    w_in = probability_window(gs, 0.0, r0)
    w_out = probability_window(gs, r0, math.inf)
    summary = {
        "a_sq": gs.a_sq,
        "b_const": gs.b_const,
        "R_beta": ratio_outside_inside(gs),
        "W_inside": w_in,
        "W_outside": w_out,
    }
    rows = [(float(xi), float(di)) for xi, di in zip(x, dens)]
    return summary, rows


def cmd_ground_state(args) -> int:
    _require_b_above_one(args.b)
    summary, rows = _ground_state_payload(args.b, args.r0, args.grid_points)
    manifest = _manifest(
        "ground-state",
        {"b": args.b, "r0": args.r0, "grid_points": args.grid_points, "format": args.format},
    )
    out = _resolve_out(args.out, f"ground_state_b{args.b:g}.{args.format}")
    if args.format == "json":
        _write_json(out, {"manifest": manifest, "summary": summary,
                          "table": {"columns": ["r_over_r0", "density"], "rows": rows}})
    else:
        for key, value in summary.items():
            manifest["parameters"][f"summary_{key}"] = value
        _write_csv(out, manifest, ["r_over_r0", "density"], rows)
    return EXIT_OK


def cmd_figure1(args) -> int:
    b_values = [float(tok) for tok in args.b_list.split(",") if tok.strip()]
    for b in b_values:
        _require_b_above_one(b)
    table = figure1_profile(b_values)
    manifest = _manifest("figure1", {"b_list": args.b_list})
    columns = ["r_over_r0"] + [f"density_b={b:g}" for b in table.b_values]
    rows = [
        tuple([float(table.r_over_r0[i])] + [float(table.densities[j, i]) for j in range(len(b_values))])
        for i in range(len(table.r_over_r0))
    ]
    _write_csv(_resolve_out(args.out, "figure1.csv"), manifest, columns, rows)
    return EXIT_OK


def cmd_figure2(args) -> int:
    _require_b_above_one(args.b_min)
    if args.b_max <= args.b_min:
        sys.stderr.write("constraint violated: need b-max > b-min\n")
        return EXIT_CONSTRAINT
    manifest = _manifest(
        "figure2", {"b_min": args.b_min, "b_max": args.b_max, "points": args.points}
    )
    rows = []
    for b in np.linspace(args.b_min, args.b_max, args.points):
        gs = build_ground_state(CylinderConfig.from_b(float(b)))
        rows.append((float(b), float(ratio_outside_inside(gs))))
    _write_csv(_resolve_out(args.out, "figure2.csv"), manifest, ["b", "R_beta"], rows)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    _require_b_above_one(args.b)
    sector_names = [tok.strip() for tok in args.sectors.split(",") if tok.strip()]
    sectors = []
    for name in sector_names:
        if name in ("phi", "chi"):  # bare component means both spins
            sectors.extend(s for s in ALL_SECTORS if s.component is Component(name))
        else:
            sectors.append(SectorLabel.parse(name))
    cfg = CylinderConfig.from_b(args.b)
    try:
        table = scan_spectrum(
            cfg, (args.m_min, args.m_max), sectors=sectors, eps_min=args.eps_min
        )
    except PrecisionError as exc:
        sys.stderr.write(f"precision failure during spectrum scan: {exc}\n")
        return EXIT_PRECISION

    verification = {}
    if args.verify:
        grid = FdGrid(r_max=24.0, n=2000, r0=cfg.r0)
        for sector in sectors:
            for m in range(args.m_min, args.m_max + 1):
                problem = RadialProblem(cfg=cfg, sector=sector, m=m)
                try:
                    fd = fd_eigenvalues(problem, grid, k=1)
                except PrecisionError as exc:
                    sys.stderr.write(f"precision failure in oracle at {sector} m={m}: {exc}\n")
                    return EXIT_PRECISION
                verification[f"{sector},m={m}"] = {
                    "oracle_lowest_eps": float(fd.values[0]),
                    "oracle_error_estimate": float(fd.error_estimates[0]),
                }

    manifest = _manifest(
        "spectrum",
        {
            "b": args.b,
            "m_min": args.m_min,
            "m_max": args.m_max,
            "sectors": ",".join(str(s) for s in sectors),
            "eps_min": args.eps_min,
            "verify": args.verify,
        },
    )
    columns = ["sector", "m", "level", "eps", "e_over_m", "residual"]
    rows = [(r.sector, r.m, r.level, r.eps, r.e_over_m, r.residual) for r in table.rows]
    if args.verify:
        columns.append("oracle_delta_eps")
        rows = [
            row + (abs(row[3] - verification[f"{row[0]},m={row[1]}"]["oracle_lowest_eps"]),)
            for row in rows
        ]
    out = _resolve_out(args.out, f"spectrum_b{args.b:g}.{args.format}")
    if args.format == "json":
        _write_json(out, {
            "manifest": manifest,
            "warnings": table.warnings,
            "verification": verification,
            "table": {"columns": columns, "rows": rows},
        })
    else:
        for warning in table.warnings:
            manifest["parameters"].setdefault("warnings", []).append(warning)
        for key, val in verification.items():
            manifest["parameters"][f"oracle {key}"] = (
                f"lowest={val['oracle_lowest_eps']!r} err={val['oracle_error_estimate']!r}"
            )
        _write_csv(out, manifest, columns, rows)
    return EXIT_OK


def cmd_check(args) -> int:
    if args.rho <= 0.0 or args.r0 <= 0.0:
        sys.stderr.write("constraint violated: rho and r0 must be positive\n")
        return EXIT_CONSTRAINT
    if args.si:
        # SI inputs: rho [C/m^3], r0 [m]. The line charge is compared against
        # the minimum value, which is where the dimensionless b lives in SI.
        lam_c_per_m = args.rho * math.pi * args.r0 ** 2
        lam_c_per_cm = lam_c_per_m / 100.0
        ref = lambda_min_si()
        b = lam_c_per_cm / ref.value_c_per_cm
        report_b = b
        extra = {
            "lambda_c_per_cm": lam_c_per_cm,
            "lambda_min_c_per_cm": ref.value_c_per_cm,
        }
    else:
        cfg = CylinderConfig(rho=args.rho, r0=args.r0, kappa_n=args.kappa, mass=args.mass,
                             charge=args.charge)
        report = check_unbroken_susy(cfg)
        report_b = report.b
        extra = {"lambda_lin": cfg.lambda_lin, "beta": cfg.beta}
    satisfied = report_b > 1.0
    payload = {
        "manifest": _manifest(
            "check",
            {"rho": args.rho, "r0": args.r0, "si": args.si},
            unit_system="si" if args.si else "natural_r0",
        ),
        "b": report_b,
        "margin": report_b - 1.0,
        "satisfied": satisfied,
        "condition": "beta*r0^2 > 1",
        **extra,
    }
    _write_json(None, payload)
    if not satisfied:
        sys.stderr.write(
            f"constraint violated: beta*r0^2 > 1 required, got b = {report_b:g}\n"
        )
        return EXIT_CONSTRAINT
    return EXIT_OK


def cmd_lambda_min(args) -> int:
    if args.kappa == 0.0 or args.mass <= 0.0:
        sys.stderr.write("constraint violated: need mass > 0 and kappa != 0\n")
        return EXIT_CONSTRAINT
    res = lambda_min_si(mass_kg=args.mass, kappa=args.kappa)
    payload = {
        "manifest": _manifest(
            "lambda-min", {"mass_kg": args.mass, "kappa": args.kappa}, unit_system="si"
        ),
        "lambda_min_c_per_cm": res.value_c_per_cm,
        "lambda_min_esu_per_cm": res.value_esu_per_cm,
        "paper_reference_c_per_cm": res.paper_reference_c_per_cm,
        "discrepancy_factor": res.discrepancy_factor,
        "conversion_path": res.conversion_path,
    }
    _write_json(None, payload)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acbound",
        description=(
            "Ground state and bound-level search for a polarized neutral spin-1/2 "
            "particle in the field of a uniformly charged cylinder."
        ),
        epilog=(
            "CSV columns: r_over_r0 (radius in units of the cylinder radius), "
            "density (|phi|^2, normalized so that 2*pi*int |phi|^2 r dr = 1), "
            "b (beta*r0^2), R_beta (outside/inside probability ratio), "
            "sector/m/level/eps/e_over_m/residual (one quantized level per row, "
            "eps in 1/r0^2 units, residual = |log-derivative mismatch|), "
            "oracle_delta_eps (|eps - nearest finite-difference eigenvalue|). "
            "Set ACBOUND_OUT_DIR to redirect default outputs."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gs = sub.add_parser("ground-state", help="Zero-mode density profile and summary.")
    gs.add_argument("--b", type=float, required=True, help="dimensionless beta*r0^2 (must be > 1)")
    gs.add_argument("--r0", type=float, default=1.0)
    gs.add_argument("--grid-points", type=int, default=501)
    gs.add_argument("--out", default=None, metavar="PATH")
    gs.add_argument("--format", choices=["csv", "json"], default="csv")
    gs.set_defaults(func=cmd_ground_state)

    f1 = sub.add_parser("figure1", help="Density profiles for several b values.")
    f1.add_argument("--b-list", required=True, metavar="B1,B2,...")
    f1.add_argument("--out", default=None, metavar="PATH")
    f1.set_defaults(func=cmd_figure1)

    f2 = sub.add_parser("figure2", help="Outside/inside probability ratio vs b.")
    f2.add_argument("--b-min", type=float, required=True)
    f2.add_argument("--b-max", type=float, required=True)
    f2.add_argument("--points", type=int, default=101)
    f2.add_argument("--out", default=None, metavar="PATH")
    f2.set_defaults(func=cmd_figure2)

    sp = sub.add_parser("spectrum", help="Bound-level scan over sectors and m.")
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--m-min", type=int, required=True)
    sp.add_argument("--m-max", type=int, required=True)
    sp.add_argument("--sectors", default="phi,chi",
                    help="comma list: phi, chi (both spins) or phi+, phi-, chi+, chi-")
    sp.add_argument("--eps-min", type=float, default=None)
    sp.add_argument("--verify", action="store_true",
                    help="cross-check each (sector, m) against the finite-difference oracle")
    sp.add_argument("--out", default=None, metavar="PATH")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.set_defaults(func=cmd_spectrum)

    ck = sub.add_parser("check", help="Report the beta*r0^2 > 1 constraint.")
    ck.add_argument("--rho", type=float, required=True)
    ck.add_argument("--r0", type=float, required=True)
    ck.add_argument("--si", action="store_true", help="interpret rho [C/m^3] and r0 [m]")
    ck.add_argument("--kappa", type=float, default=2.0, help="natural-unit mode moment")
    ck.add_argument("--mass", type=float, default=1.0, help="natural-unit mode mass")
    ck.add_argument("--charge", type=float, default=1.0, help="natural-unit mode charge")
    ck.set_defaults(func=cmd_check)

    lm = sub.add_parser("lambda-min", help="Minimum line charge, SI conversion.")
    lm.add_argument("--mass", type=float, default=None, metavar="KG")
    lm.add_argument("--kappa", type=float, default=None)
    lm.set_defaults(func=cmd_lambda_min)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "lambda-min":
        from .model import KAPPA_NEUTRON, NEUTRON_MASS_KG

        if args.mass is None:
            args.mass = NEUTRON_MASS_KG
        if args.kappa is None:
            args.kappa = KAPPA_NEUTRON
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    except PrecisionError as exc:
        sys.stderr.write(f"precision failure: {exc}\n")
        return EXIT_PRECISION
    except AcBoundError as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_CONSTRAINT
    except OSError as exc:
        sys.stderr.write(f"i/o failure: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
