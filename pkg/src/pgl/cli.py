"""Command-line front end.

Exit codes:
  0   success
  1   verify: an assertion of the theorem check failed
  2   configuration failed validation (grid, ranges, projection axes, ...)
  3   detection-stage error
  64  configuration file unreadable or not JSON
  65  invalid curve (bad parameters, not unit speed, not regular)
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .analysis import AnalysisConfig, ConfigError, dumps, finalize, parse_grid, run_analysis, _pair
from .config import DEFAULT_TOLERANCES
from .detector import DetectionError, verify_theorem
from .gauss_map import calibrate
from .mesh import build_mesh, parse_projection, write_csv, write_obj
from .profile import CurveDomainError, ExponentialFamilyParams, ParameterError, curve_from_spec
from .surface import SurfaceKind

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_DETECTION = 3
EXIT_UNREADABLE = 64
EXIT_BAD_CURVE = 65

log = logging.getLogger("pgl")


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load_config(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise _Exit(EXIT_UNREADABLE, f"cannot read config {path!r}: {exc}") from exc


def _build_config(args) -> AnalysisConfig:
    raw = _load_config(args.config)
    if not isinstance(raw, dict):
        raise _Exit(EXIT_UNREADABLE, "config must be a JSON object")
    if getattr(args, "grid", None):
        raw["grid"] = args.grid
    if getattr(args, "t_range", None):
        raw["t_range"] = args.t_range
    if getattr(args, "s_range", None):
        raw["s_range"] = args.s_range
    if getattr(args, "project", None):
        raw.setdefault("mesh", {})["project"] = args.project
    if getattr(args, "tol_detect", None) is not None:
        raw.setdefault("tolerances", {})["detect"] = args.tol_detect
    if getattr(args, "numeric_laplacian", False):
        raw["numeric_laplacian"] = True
    if getattr(args, "richardson", False):
        raw["richardson"] = True
    if getattr(args, "eps_weighted", None):
        raw["eps_weighted"] = args.eps_weighted
    if getattr(args, "out", None):
        raw["out"] = args.out
    try:
        return AnalysisConfig.from_dict(raw)
    except ConfigError as exc:
        raise _Exit(EXIT_CONFIG, str(exc)) from exc


def _curve(cfg: AnalysisConfig):
    try:
        return curve_from_spec(cfg.curve_spec)
    except (ParameterError, CurveDomainError, ValueError, TypeError) as exc:
        raise _Exit(EXIT_BAD_CURVE, f"invalid curve: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    cfg = _build_config(args)
    curve = _curve(cfg)
    try:
        report = run_analysis(cfg, curve)
    except ConfigError as exc:
        raise _Exit(EXIT_CONFIG, str(exc)) from exc
    except CurveDomainError as exc:
        raise _Exit(EXIT_BAD_CURVE, f"invalid curve: {exc}") from exc
    except DetectionError as exc:
        raise _Exit(EXIT_DETECTION, f"detection failed: {exc}") from exc
    _emit(dumps(finalize(report)), cfg.out)
    if not report["validation"]["ok"]:
        v = report["validation"]
        log.error(
            "curve fails validation: unit-speed residual %.3e, min eps1(y^2-x^2) %.3e",
            v["unit_speed_max"],
            v["regularity_min"],
        )
        return EXIT_BAD_CURVE
    return EXIT_OK


def cmd_verify(args) -> int:
    kind = SurfaceKind.parse(args.kind)
    mu2 = args.mu2 if args.mu2 is not None else -1.0 / (args.b0 * args.b0 * args.mu1)
    params = ExponentialFamilyParams(b0=args.b0, mu1=args.mu1, mu2=mu2, d=args.d, eps=args.eps)
    try:
        grid = parse_grid(args.grid)
        s_rng = _pair(args.s_range, "s_range")
        t_rng = _pair(args.t_range, "t_range") if args.t_range else None
    except ConfigError as exc:
        raise _Exit(EXIT_CONFIG, str(exc)) from exc
    tol = DEFAULT_TOLERANCES.with_overrides(detect=args.tol_detect)
    try:
        check = verify_theorem(kind, params, grid=grid, s_range=s_rng, t_range=t_rng, tol=tol)
    except ParameterError as exc:
        raise _Exit(EXIT_BAD_CURVE, f"invalid family parameters: {exc}") from exc
    except DetectionError as exc:
        raise _Exit(EXIT_DETECTION, f"detection failed: {exc}") from exc
    summary = {
        "ok": check.ok,
        "failing_stage": check.failing_stage,
        "kind": kind.value,
        "params": params.to_dict(),
        "f_expected": check.f_expected,
        "f_recovered": check.f_recovered,
        "details": check.details,
    }
    if check.report is not None:
        summary.update(
            pointwise_one_type=check.report.pointwise_one_type,
            one_type_kind=check.report.kind,
            global_one_type=check.report.global_one_type,
            residual_max=check.report.residual_max,
            C=list(check.report.C),
        )
    _emit(json.dumps(summary, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK if check.ok else EXIT_VERIFY_FAILED


def cmd_mesh(args) -> int:
    cfg = _build_config(args)
    curve = _curve(cfg)
    try:
        t_rng, s_rng = cfg.resolved_ranges(curve)
    except ConfigError as exc:
        raise _Exit(EXIT_CONFIG, str(exc)) from exc
    obj = args.obj or cfg.obj
    csv_path = args.csv or cfg.csv
    if not obj and not csv_path:
        raise _Exit(EXIT_CONFIG, "mesh needs --obj and/or --csv (or mesh.obj / mesh.csv in the config)")
    try:
        mesh = build_mesh(cfg.kind, curve, cfg.grid[0], cfg.grid[1], t_rng, s_rng)
    except CurveDomainError as exc:
        raise _Exit(EXIT_BAD_CURVE, f"invalid curve: {exc}") from exc
    if obj:
        write_obj(mesh, obj, cfg.project)
    if csv_path:
        write_csv(mesh, csv_path)
    log.info("wrote %d vertices, %d quads", mesh.n_vertices, mesh.n_quads)
    return EXIT_OK


def cmd_calibrate(args) -> int:
    _emit(json.dumps(calibrate().to_dict(), indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def _projection_arg(text: str) -> str:
    try:
        parse_projection(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pgl",
        description="Flat rotation surfaces in E^4_2 with pointwise 1-type Gauss map.",
        epilog=__doc__.split("\n", 1)[1],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def grid_opts(p):
        p.add_argument("--grid", help="grid size NxM (t samples x s samples)")
        p.add_argument("--t-range", help="t interval a:b (use --t-range=-2:2 for negatives)")
        p.add_argument("--s-range", help="s interval a:b")

    p = sub.add_parser("analyze", help="run the full pipeline and write a JSON report")
    p.add_argument("--config", required=True)
    p.add_argument("--out", help="report path (default: stdout)")
    grid_opts(p)
    p.add_argument("--tol-detect", type=float)
    p.add_argument("--project", type=_projection_arg)
    p.add_argument("--numeric-laplacian", action="store_true")
    p.add_argument("--richardson", action="store_true")
    p.add_argument("--eps-weighted", choices=("auto", "on", "off"))
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="check the classification theorem on one family member")
    p.add_argument("--kind", default="M1_hyperbolic")
    p.add_argument("--b0", type=float, required=True)
    p.add_argument("--mu1", type=float, required=True)
    p.add_argument("--mu2", type=float, help="default: -1/(b0^2 mu1)")
    p.add_argument("--d", type=float, default=0.0)
    p.add_argument("--eps", type=int, choices=(1, -1), default=1)
    p.add_argument("--grid", default="17x17")
    p.add_argument("--s-range", default="-1:1")
    p.add_argument("--t-range")
    p.add_argument("--tol-detect", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mesh", help="export a sampled surface as OBJ and/or CSV")
    p.add_argument("--config", required=True)
    grid_opts(p)
    p.add_argument("--project", type=_projection_arg, help="three ambient axes, e.g. 1,2,4")
    p.add_argument("--obj")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_mesh)

    p = sub.add_parser("calibrate", help="print the Laplacian sign-convention decision")
    p.add_argument("--out")
    p.set_defaults(func=cmd_calibrate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except _Exit as exc:
        log.error("%s", exc)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
