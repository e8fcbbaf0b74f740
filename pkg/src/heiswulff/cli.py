"""Command line: body, sphere, ode, check, isoperim and converge subcommands.

Exit codes: 0 success, 1 failed verification or self-test, 2 usage error,
3 numerical failure.
"""
import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import selftest
from .bodies import parse_body
from .cmc import CMCProblem, closed_form_cmc, compare, integrate
from .errors import HeisWulffError, NumericalError
from .isoperimetry import (DifferenceBodyGrid, calibration_check, competitor_suite,
                           convergence_study, profile_f)
from .quadrature import DEFAULT_PANELS
from .sphere import WulffSphere

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    body: Optional[str]
    r: float
    panels: int
    nu: int
    nv: int
    tol: float
    out: Optional[str]
    format: Optional[str]

    def __post_init__(self):
        if min(self.panels, self.nu, self.nv) < 8:
            raise UsageError("resolutions must be at least 8")
        if not self.r > 0:
            raise UsageError("r must be positive")


def fmt(x):
    return f"{x:.17g}"


def to_json(obj):
    """JSON text with floats at 17 significant digits; non-finite values become null."""
    def conv(o):
        if isinstance(o, dict):
            return "{" + ", ".join(f"{json.dumps(str(k))}: {conv(v)}" for k, v in o.items()) + "}"
        if isinstance(o, (list, tuple, np.ndarray)):
            return "[" + ", ".join(conv(v) for v in o) + "]"
        if isinstance(o, (bool, np.bool_)):
            return "true" if o else "false"
        if isinstance(o, (int, np.integer)):
            return str(int(o))
        if isinstance(o, (float, np.floating)):
            return fmt(float(o)) if math.isfinite(o) else "null"
        if o is None:
            return "null"
        return json.dumps(str(o))
    return conv(obj) + "\n"


def to_csv(header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) if isinstance(v, (float, np.floating)) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def emit(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _pair(text):
    try:
        a, b = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two comma-separated numbers, got {text!r}")
    return a, b


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--panels", type=int, default=DEFAULT_PANELS)
    common.add_argument("--nu", type=int, default=64)
    common.add_argument("--nv", type=int, default=64)
    common.add_argument("--step", type=float, default=None)
    common.add_argument("--tol", type=float, default=1e-6)
    common.add_argument("--out", default=None)
    common.add_argument("--format", choices=("json", "csv", "obj"), default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--selftest", action="store_true", help="run this module's invariant suite")

    p = argparse.ArgumentParser(prog="heiswulff", description="Wulff spheres in the Heisenberg group.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("body", parents=[common], help="body info and duality check")
    b.add_argument("--body", default="disk")

    s = sub.add_parser("sphere", parents=[common], help="area, volume, mesh and pole diagnostics")
    s.add_argument("--body", default="disk")
    s.add_argument("--r", type=float, default=1.0)
    s.add_argument("--mesh", default=None, help="OBJ output path")
    s.add_argument("--report", default=None, help="JSON report path")
    s.add_argument("--poles", type=float, default=None, metavar="V0",
                   help="add pole diagnostics along the loop through v0")

    o = sub.add_parser("ode", parents=[common], help="integrate a CMC curve")
    o.add_argument("--body", default="disk")
    o.add_argument("--H", type=float, default=1.0)
    o.add_argument("--pos", type=_pair, default=(0.0, 0.0))
    o.add_argument("--vel", type=_pair, default=(1.0, 0.0))
    o.add_argument("--t0", type=float, default=0.0)
    o.add_argument("--verify", action="store_true", help="compare with the closed-form solution")

    c = sub.add_parser("check", parents=[common], help="full invariant suite")
    c.add_argument("--body", default=None, help="ignored; the suite covers the builtin bodies")

    i = sub.add_parser("isoperim", parents=[common], help="calibration profile and competitors")
    i.add_argument("--body", default="disk")
    i.add_argument("--r", type=float, default=1.0)
    i.add_argument("--volume", type=float, default=None, help="competitor volume for the profile")
    i.add_argument("--n-sigma", type=int, default=6)
    i.add_argument("--n-s", type=int, default=16)

    v = sub.add_parser("converge", parents=[common], help="convergence tables for lp or triangle families")
    v.add_argument("--family", choices=("lp", "tri"), default="lp")
    v.add_argument("--ells", type=_floats, default=[8.0, 16.0, 32.0])
    return p


def run_selftest(command, seed):
    checks = selftest.run(selftest.COMMAND_SUITES[command], seed)
    lines = [f"{'PASS' if c.ok else 'FAIL'} {c.name} value={c.value:.3e} tol={c.tol:.0e}" for c in checks]
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if all(c.ok for c in checks) else EXIT_FAIL


def cmd_body(args, cfg):
    K = parse_body(args.body)
    th = np.linspace(0, 2 * np.pi, 512, endpoint=False)
    u = np.stack([np.cos(th), np.sin(th)], -1)
    report = {
        "body": K.name,
        "area": K.area,
        "length": K.length,
        "centrally_symmetric": K.centrally_symmetric,
        "duality_error": float(np.max(np.abs(selftest.brute_support(K, u) - K.support(u)))),
        "pi_gauge_error": float(np.max(np.abs(K.gauge(K.pi_map(u)) - 1))),
    }
    emit(to_json(report), cfg.out)
    return EXIT_OK


def cmd_sphere(args, cfg):
    S = WulffSphere(parse_body(args.body), cfg.r)
    report = S.report(cfg.panels)
    if args.poles is not None:
        rows = S.pole_diagnostics(args.poles, [1e-2, 1e-3, 1e-4])
        report["pole_diagnostics"] = [dict(zip(("u", "h_over_g", "h_over_g2_plus_inv_kappa", "NT"), r)) for r in rows]
    mesh_path = args.mesh or (cfg.out if cfg.format == "obj" else None)
    if mesh_path:
        mesh = S.mesh(cfg.nu, cfg.nv)
        mesh.write_obj(mesh_path)
        report["mesh"] = {"nu": cfg.nu, "nv": cfg.nv, "vertices": len(mesh.vertices),
                          "faces": len(mesh.faces), "watertight": mesh.is_watertight()}
    if args.report:
        emit(to_json(report), args.report)
    if not (args.report or cfg.format == "obj"):
        emit(to_json(report), cfg.out)
    return EXIT_OK if abs(report["minkowski_residual"]) <= cfg.tol else EXIT_FAIL


def cmd_ode(args, cfg):
    K = parse_body(args.body)
    P = CMCProblem(K, args.H, args.pos, args.vel, args.t0)
    curve = integrate(P, step=args.step)
    if cfg.format == "csv":
        rows = np.column_stack([curve.s, curve.points, curve.pointwise_residual])
        emit(to_csv(["s", "x", "y", "t", "res"], rows.tolist()), cfg.out)
    closed = closed_form_cmc(P)
    end = closed(curve.s[-1])[0]
    summary = {
        "H": P.H,
        "K": K.name,
        "period": P.period,
        "steps": len(curve.s) - 1,
        "period_defect": float(np.linalg.norm(curve.end - end)),
        "horizontality_residual": curve.horizontality_residual,
    }
    status = EXIT_OK
    if args.verify:
        summary["max_deviation"] = compare(curve, closed.curve(curve.s))
        summary["tol"] = cfg.tol
        status = EXIT_OK if summary["max_deviation"] <= cfg.tol else EXIT_FAIL
    if cfg.format != "csv":
        emit(to_json(summary), cfg.out)
    return status


def cmd_check(args, cfg):
    return run_selftest("check", args.seed)


def cmd_isoperim(args, cfg):
    K = parse_body(args.body)
    S = WulffSphere(K)
    unit = (S.area(cfg.panels), S.volume(cfg.panels))
    vol = args.volume if args.volume is not None else unit[1] * cfg.r**4
    prof = profile_f(K, vol, unit=unit)
    grid = DifferenceBodyGrid(K, cfg.r, args.n_sigma, args.n_s)
    rows = [(C.name, *calibration_check(C, grid, unit=unit)) for C in competitor_suite(K, cfg.r)]
    if cfg.format == "csv":
        emit(to_csv(["family", "perimeter", "ball_perimeter", "margin"], rows), cfg.out)
    else:
        report = {
            "body": K.name,
            "r": cfg.r,
            "area1": unit[0],
            "volume1": unit[1],
            "volume": vol,
            "rho0": prof.rho0,
            "argmin": prof.argmin,
            "profile_min": float(np.min(prof.f)),
            "margins": {name: m for name, _, _, m in rows},
        }
        emit(to_json(report), cfg.out)
    ok = min(m for name, _, _, m in rows) >= -cfg.tol
    return EXIT_OK if ok else EXIT_FAIL


def cmd_converge(args, cfg):
    table = convergence_study(args.family, args.ells, cfg.nu, cfg.nv, cfg.panels)
    if cfg.format == "json":
        keys = ("ell", "area", "volume", "dH")
        emit(to_json([dict(zip(keys, row)) for row in table]), cfg.out)
    else:
        emit(to_csv(["ell", "area", "volume", "dH"], table.tolist()), cfg.out)
    return EXIT_OK


COMMANDS = {
    "body": cmd_body,
    "sphere": cmd_sphere,
    "ode": cmd_ode,
    "check": cmd_check,
    "isoperim": cmd_isoperim,
    "converge": cmd_converge,
}


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.selftest:
        return run_selftest(args.command, args.seed)
    try:
        cfg = RunConfig(args.command, getattr(args, "body", None), getattr(args, "r", 1.0),
                        args.panels, args.nu, args.nv, args.tol, args.out, args.format)
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"heiswulff: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"heiswulff: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (HeisWulffError, ValueError, OSError) as exc:
        print(f"heiswulff: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())
