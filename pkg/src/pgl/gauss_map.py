"""Gauss map G = e1 ^ e2 and its Laplacian.

Two independent routes are provided: the closed form in the frame bivectors
(:func:`laplacian_closed`) and a finite-difference Laplace-Beltrami operator
acting on the six ambient components of G (:func:`laplacian_numeric`).  The
latter only uses the immersion's metric, never a, b, c.

The sign convention is Delta = -(Laplace-Beltrami).  Whether the t-direction
term carries the causal sign of e1 is decided once by :func:`calibrate`.
"""

from __future__ import annotations

import functools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .algebra import Bivector, inner6, wedge
from .config import FD_STEP, thread_cap
from .profile import CurveDomainError, EXAMPLE1_PARAMS, ProfileCurve, abc_jets, synthesize_family
from .surface import SurfaceKind, _frame_values, frame, frame_signs, gaussian_curvature

CONVENTIONS = ("weighted", "unweighted")

# frame bivectors that appear in the closed form, in report order
FRAME_BIVECTORS = ("e1^e2", "e1^e3", "e2^e4", "e3^e4")


@dataclass
class GaussSample:
    t: float
    s: float
    G: Bivector
    laplacian_closed: Bivector
    laplacian_numeric: Bivector | None = None
    frame_bivectors: dict[str, Bivector] = field(default_factory=dict)
    K: float | None = None


def gauss_map_at(kind: SurfaceKind, curve: ProfileCurve, t: float, s: float) -> Bivector:
    fr = frame(kind, curve, t, s)
    return wedge(fr.e1, fr.e2)


def frame_bivectors_at(kind: SurfaceKind, curve: ProfileCurve, t: float, s: float) -> dict[str, Bivector]:
    fr = frame(kind, curve, t, s)
    vs = fr.vectors()
    return {f"e{i + 1}^e{j + 1}": wedge(vs[i], vs[j]) for i in range(4) for j in range(i + 1, 4)}


def laplacian_frame_coefficients(kind: SurfaceKind, curve: ProfileCurve, s: float) -> dict[str, float]:
    """Coefficients of Delta G on e1^e2, e1^e3, e2^e4, e3^e4."""
    kind = SurfaceKind.parse(kind)
    aj, bj, cj = abc_jets(curve, s)
    a, b, c = aj.v0, bj.v0, cj.v0
    bp, cp = bj.v1, cj.v1
    e = curve.epsilon1
    c12 = -(3.0 * b * b + c * c)
    c13 = 2.0 * a * b - e * a * c + cp
    if kind is SurfaceKind.M1:
        c24 = 3.0 * a * b - e * bp
        c34 = 2.0 * (e * b * c - b * b)
    else:
        c24 = -3.0 * a * b + e * bp
        c34 = 2.0 * (b * b - e * b * c)
    return dict(zip(FRAME_BIVECTORS, (c12, c13, c24, c34)))


def laplacian_closed(kind: SurfaceKind, curve: ProfileCurve, t: float, s: float) -> Bivector:
    """Delta G in ambient bivector coordinates from the closed form."""
    coeffs = laplacian_frame_coefficients(kind, curve, s)
    fb = frame_bivectors_at(kind, curve, t, s)
    out = Bivector.zero()
    for name, k in coeffs.items():
        out = out + k * fb[name]
    return out


# -- finite-difference oracle -------------------------------------------------


def _g_array(kind: SurfaceKind, curve: ProfileCurve, t: float, s: float) -> np.ndarray:
    x, y = curve.jets(s)
    den = curve.epsilon1 * (y.v0**2 - x.v0**2)
    if not den > 0.0:
        raise CurveDomainError(f"regularity fails at s={s!r} inside the stencil", s)
    e1, e2, _, _ = _frame_values(kind, x.v0, y.v0, x.v1, y.v1, math.sqrt(den), t)
    return wedge(e1, e2).array()


def _metric_factor(curve: ProfileCurve, s: float) -> float:
    """sqrt|g| = sqrt(eps1 (y^2 - x^2)); g_ss = 1 for a unit-speed profile."""
    x, y = curve.point(s)
    return math.sqrt(curve.epsilon1 * (y * y - x * x))


def fd_laplace_beltrami(func, curve: ProfileCurve, t: float, s: float, h: float, weight: float) -> np.ndarray:
    """-(Laplace-Beltrami) of ``func(t, s)`` by second-order central differences.

    The metric is g = sign * E dt^2 + ds^2 with E = eps1 (y^2 - x^2); the
    t-term is multiplied by ``weight`` (the causal sign, or 1 for the
    unweighted variant) and the s-term is differenced in divergence form.
    """
    f0 = np.asarray(func(t, s), dtype=float)
    root = _metric_factor(curve, s)
    ftt = (np.asarray(func(t + h, s)) - 2.0 * f0 + np.asarray(func(t - h, s))) / (h * h)
    r_plus, r_minus = _metric_factor(curve, s + 0.5 * h), _metric_factor(curve, s - 0.5 * h)
    flux_plus = r_plus * (np.asarray(func(t, s + h)) - f0)
    flux_minus = r_minus * (f0 - np.asarray(func(t, s - h)))
    div_s = (flux_plus - flux_minus) / (h * h * root)
    return -(weight * ftt / (root * root) + div_s)


def _fd_laplacian(kind: SurfaceKind, curve: ProfileCurve, t: float, s: float, h: float, weight: float) -> np.ndarray:
    return fd_laplace_beltrami(functools.partial(_g_array, kind, curve), curve, t, s, h, weight)


def _resolve_convention(convention: str) -> str:
    if convention in ("auto", None):
        return calibrate().convention
    if convention in ("on", "weighted"):
        return "weighted"
    if convention in ("off", "unweighted"):
        return "unweighted"
    raise ValueError(f"unknown convention {convention!r}")


def laplacian_numeric(
    kind: SurfaceKind,
    curve: ProfileCurve,
    t: float,
    s: float,
    h: float = FD_STEP,
    convention: str = "auto",
    richardson: bool = False,
) -> Bivector:
    """Second-order central-difference Laplacian of G at (t, s).

    ``convention`` is ``"weighted"`` (the t-term carries <e1, e1>),
    ``"unweighted"`` or ``"auto"`` (the calibrated choice).
    """
    kind = SurfaceKind.parse(kind)
    if not h > 0.0:
        raise ValueError("step must be positive")
    for probe in (s - 2.0 * h, s + 2.0 * h):
        if not curve.contains(probe):
            raise CurveDomainError(
                f"stencil s={s!r} +/- 2h leaves domain {curve.domain!r}", probe
            )
    conv = _resolve_convention(convention)
    weight = float(frame_signs(kind, curve.epsilon1)[0]) if conv == "weighted" else 1.0
    coarse = _fd_laplacian(kind, curve, t, s, h, weight)
    if not richardson:
        return Bivector.from_array(coarse)
    fine = _fd_laplacian(kind, curve, t, s, 0.5 * h, weight)
    return Bivector.from_array((4.0 * fine - coarse) / 3.0)


# -- calibration --------------------------------------------------------------


@dataclass(frozen=True)
class CalibrationResult:
    convention: str
    errors: dict
    points: tuple
    h: float

    def to_dict(self) -> dict:
        return {
            "convention": self.convention,
            "errors": self.errors,
            "points": [list(p) for p in self.points],
            "h": self.h,
        }


CALIBRATION_POINTS = ((0.3, 0.7), (-1.1, 0.2), (1.5, -1.3), (0.0, 0.0))


@functools.lru_cache(maxsize=None)
def calibrate(h: float = FD_STEP) -> CalibrationResult:
    """Pick the Laplacian sign convention that reproduces the closed form.

    The comparison runs on the Example 1 profile (b0 = -1, mu1 = -1, mu2 = 1,
    d = 0) rotated both hyperbolically and elliptically; the hyperbolic
    surface alone is Riemannian and cannot tell the conventions apart.  Ties
    resolve to the first entry of ``CONVENTIONS``.
    """
    curve = synthesize_family(EXAMPLE1_PARAMS)
    errors: dict[str, dict[str, float]] = {}
    for conv in CONVENTIONS:
        errors[conv] = {}
        for kind in SurfaceKind:
            worst = 0.0
            for t, s in CALIBRATION_POINTS:
                closed = laplacian_closed(kind, curve, t, s).array()
                num = laplacian_numeric(kind, curve, t, s, h=h, convention=conv).array()
                worst = max(worst, float(np.max(np.abs(closed - num))))
            errors[conv][kind.value] = worst
    best = min(CONVENTIONS, key=lambda c: (max(errors[c].values()), CONVENTIONS.index(c)))
    return CalibrationResult(best, errors, CALIBRATION_POINTS, h)


# -- grid sampling ------------------------------------------------------------


def _map(fn, items):
    workers = thread_cap()
    if workers <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def sample_point(
    kind: SurfaceKind,
    curve: ProfileCurve,
    t: float,
    s: float,
    numeric: bool = False,
    h: float = FD_STEP,
    convention: str = "auto",
    richardson: bool = False,
) -> GaussSample:
    kind = SurfaceKind.parse(kind)
    fb = frame_bivectors_at(kind, curve, t, s)
    coeffs = laplacian_frame_coefficients(kind, curve, s)
    closed = Bivector.zero()
    for name, k in coeffs.items():
        closed = closed + k * fb[name]
    num = None
    if numeric:
        num = laplacian_numeric(kind, curve, t, s, h=h, convention=convention, richardson=richardson)
    return GaussSample(
        t=float(t),
        s=float(s),
        G=fb["e1^e2"],
        laplacian_closed=closed,
        laplacian_numeric=num,
        frame_bivectors=fb,
        K=gaussian_curvature(kind, curve, s),
    )


def parameter_grid(t_range, s_range, nt: int, ns: int, periodic_t: bool = False):
    ts = np.linspace(t_range[0], t_range[1], nt, endpoint=not periodic_t)
    ss = np.linspace(s_range[0], s_range[1], ns)
    return [(float(t), float(s)) for s in ss for t in ts]


def sample_grid(
    kind: SurfaceKind,
    curve: ProfileCurve,
    points,
    numeric: bool = False,
    h: float = FD_STEP,
    convention: str = "auto",
    richardson: bool = False,
) -> list[GaussSample]:
    kind = SurfaceKind.parse(kind)
    if numeric:
        convention = _resolve_convention(convention)
    fn = lambda p: sample_point(kind, curve, p[0], p[1], numeric, h, convention, richardson)  # noqa: E731
    return _map(fn, list(points))


def gauss_norm(sample: GaussSample) -> float:
    return inner6(sample.G, sample.G)
