"""End-to-end analysis of one rotation surface, producing a JSON-able report."""

from __future__ import annotations

import datetime
import json
import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import __version__
from .config import DEFAULT_TOLERANCES, FD_STEP, Tolerances
from .detector import classify_flat_one_type, detect
from .gauss_map import calibrate, parameter_grid, sample_grid
from .mesh import parse_projection
from .profile import ProfileCurve, abc_jets, curve_from_spec, validate
from .surface import SurfaceKind, gauss_codazzi_residuals, t_range_default

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    """The analysis configuration is inconsistent."""


def _pair(value, name) -> tuple[float, float]:
    if isinstance(value, str):
        parts = value.split(":")
    else:
        parts = list(value)
    if len(parts) != 2:
        raise ConfigError(f"{name} must be 'a:b' or a 2-element list, got {value!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{name}: {exc}") from exc
    if not hi > lo:
        raise ConfigError(f"{name} is degenerate: {value!r}")
    return lo, hi


def parse_grid(value) -> tuple[int, int]:
    if isinstance(value, str):
        parts = value.lower().split("x")
    else:
        parts = list(value)
    try:
        nt, ns = (int(p) for p in parts)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"grid must be 'NxM', got {value!r}") from exc
    if nt < 2 or ns < 2:
        raise ConfigError(f"grid must be at least 2x2, got {nt}x{ns}")
    return nt, ns


@dataclass
class AnalysisConfig:
    kind: SurfaceKind
    curve_spec: dict
    grid: tuple[int, int] = (33, 33)
    t_range: tuple[float, float] | None = None
    s_range: tuple[float, float] | None = None
    tolerances: Tolerances = DEFAULT_TOLERANCES
    out: str | None = None
    project: tuple[int, int, int] = (1, 2, 3)
    obj: str | None = None
    csv: str | None = None
    numeric_laplacian: bool = False
    richardson: bool = False
    eps_weighted: str = "auto"
    h: float = FD_STEP
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, raw: dict) -> AnalysisConfig:
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        if "curve" not in raw:
            raise ConfigError("config needs a 'curve' entry")
        try:
            kind = SurfaceKind.parse(raw.get("kind", "M1_hyperbolic"))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        tol_raw = raw.get("tolerances", {}) or {}
        try:
            tol = DEFAULT_TOLERANCES.with_overrides(**tol_raw)
        except TypeError as exc:
            raise ConfigError(f"unknown tolerance: {exc}") from exc
        mesh = raw.get("mesh", {}) or {}
        conv = str(raw.get("eps_weighted", "auto"))
        if conv not in ("auto", "on", "off"):
            raise ConfigError(f"eps_weighted must be auto, on or off, got {conv!r}")
        try:
            project = parse_projection(mesh.get("project", raw.get("project", (1, 2, 3))))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        cfg = cls(
            kind=kind,
            curve_spec=raw["curve"],
            grid=parse_grid(raw.get("grid", (33, 33))),
            t_range=_pair(raw["t_range"], "t_range") if raw.get("t_range") is not None else None,
            s_range=_pair(raw["s_range"], "s_range") if raw.get("s_range") is not None else None,
            tolerances=tol,
            out=raw.get("out"),
            project=project,
            obj=mesh.get("obj"),
            csv=mesh.get("csv"),
            numeric_laplacian=bool(raw.get("numeric_laplacian", False)),
            richardson=bool(raw.get("richardson", False)),
            eps_weighted=conv,
            h=float(raw.get("h", FD_STEP)),
        )
        if not cfg.h > 0:
            raise ConfigError("h must be positive")
        return cfg

    def resolved_ranges(self, curve: ProfileCurve) -> tuple[tuple[float, float], tuple[float, float]]:
        t_rng = self.t_range or t_range_default(self.kind)
        s_rng = self.s_range or curve.domain
        if not (curve.contains(s_rng[0]) and curve.contains(s_rng[1])):
            raise ConfigError(f"s_range {s_rng!r} exceeds curve domain {curve.domain!r}")
        return t_rng, s_rng


def _clean(obj):
    """Replace non-finite floats by None so the report is strict JSON."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.generic):
        return _clean(obj.item())
    return obj


def run_analysis(cfg: AnalysisConfig, curve: ProfileCurve | None = None) -> dict:
    """Evaluate the full pipeline.  Curve errors propagate to the caller."""
    if curve is None:
        curve = curve_from_spec(cfg.curve_spec)
    tol = cfg.tolerances
    t_rng, s_rng = cfg.resolved_ranges(curve)
    nt, ns = cfg.grid
    s_dense = np.linspace(s_rng[0], s_rng[1], 257)
    validation = validate(curve, s_dense, tol)
    report: dict = {
        "schema_version": SCHEMA_VERSION,
        "surface": cfg.kind.value,
        "curve": curve.spec,
        "epsilon1": curve.epsilon1,
        "grid": {"nt": nt, "ns": ns, "t_range": list(t_rng), "s_range": list(s_rng)},
        "tolerances": tol.to_dict(),
        "validation": validation.to_dict(),
    }
    if not validation.ok:
        return report

    vals = np.array([[j.v0 for j in abc_jets(curve, float(s))] for s in s_dense])
    b, c = vals[:, 1], vals[:, 2]
    K = curve.epsilon1 * b * b - b * c
    if cfg.kind is SurfaceKind.M2:
        K = -K
    bc_form = float(np.max(np.abs(b * c - b * b))) if curve.epsilon1 == 1 else None
    report["curvature"] = {
        "max_abs_K": float(np.max(np.abs(K))),
        "flat": bool(np.max(np.abs(K)) <= tol.flat),
        "bc_form_max_abs": bc_form,
    }
    res = np.array([gauss_codazzi_residuals(curve, float(s)) for s in s_dense])
    report["identities"] = {
        "gauss_max": float(np.max(np.abs(res[:, 0]))),
        "codazzi_max": float(np.max(np.abs(res[:, 1]))),
        "ok": bool(np.max(np.abs(res)) <= tol.identity),
    }

    pts = parameter_grid(t_rng, s_rng, nt, ns, periodic_t=cfg.kind is SurfaceKind.M2)
    samples = sample_grid(cfg.kind, curve, pts)
    cal = calibrate()
    conv = {"auto": cal.convention, "on": "weighted", "off": "unweighted"}[cfg.eps_weighted]
    lap = {
        "convention": conv,
        "calibration": cal.to_dict(),
        "numeric": cfg.numeric_laplacian,
        "h": cfg.h,
        "richardson": cfg.richardson,
        "n_compared": 0,
        "max_abs_diff": None,
        "max_rel_diff": None,
    }
    if cfg.numeric_laplacian:
        inner = [(t, s) for t, s in pts if curve.contains(s - 2 * cfg.h) and curve.contains(s + 2 * cfg.h)]
        numeric = sample_grid(
            cfg.kind, curve, inner, numeric=True, h=cfg.h, convention=conv, richardson=cfg.richardson
        )
        if numeric:
            diff = np.array([np.abs(sm.laplacian_closed.array() - sm.laplacian_numeric.array()) for sm in numeric])
            scale = max(max(sm.laplacian_closed.max_abs() for sm in numeric), 1e-300)
            lap.update(
                n_compared=len(numeric),
                max_abs_diff=float(diff.max()),
                max_rel_diff=float(diff.max() / scale),
            )
    report["laplacian"] = lap

    one = detect(samples, tol=tol)
    report.update(one.to_dict())
    report["classification"] = classify_flat_one_type(cfg.kind, curve, s_dense, tol).to_dict()
    return report


def finalize(report: dict) -> dict:
    out = _clean(report)
    out["metadata"] = {
        "generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
        "version": __version__,
    }
    return out


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"


def load_schema() -> dict:
    return json.loads(resources.files("pgl").joinpath("report_schema.json").read_text())
