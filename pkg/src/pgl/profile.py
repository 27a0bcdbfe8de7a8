"""Unit-speed profile curves and their invariant functions a, b, c."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .config import DEFAULT_TOLERANCES, GRID_SAMPLES, Tolerances
from .jets import (
    Jet3,
    JetDomainError,
    jet_asinh,
    jet_cosh,
    jet_exp,
    jet_log,
    jet_sinh,
    jet_sqrt,
)

Evaluator = Callable[[Jet3], "tuple[Jet3, Jet3]"]


class CurveDomainError(ValueError):
    """A curve was evaluated outside its domain or where it is not regular."""

    def __init__(self, message: str, s: float | None = None):
        super().__init__(message)
        self.s = s


class ParameterError(ValueError):
    """Family parameters violate their defining constraint."""


@dataclass(frozen=True)
class ProfileCurve:
    """alpha(s) = (x(s), y(s)) with (x')^2 - (y')^2 = 1 and eps1 (y^2 - x^2) > 0.

    ``evaluator`` receives the identity jet at ``s`` and returns the jets of
    ``x`` and ``y``.  ``spec`` is the JSON-able description the curve was
    built from, if any.
    """

    evaluator: Evaluator
    domain: tuple[float, float]
    epsilon1: int
    name: str = "custom"
    spec: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.epsilon1 not in (1, -1):
            raise ParameterError(f"epsilon1 must be +1 or -1, got {self.epsilon1!r}")
        lo, hi = self.domain
        if not hi > lo:
            raise ParameterError(f"degenerate domain {self.domain!r}")

    def contains(self, s: float) -> bool:
        lo, hi = self.domain
        slack = 1e-12 * max(1.0, abs(lo), abs(hi))
        return lo - slack <= s <= hi + slack

    def jets(self, s: float) -> tuple[Jet3, Jet3]:
        try:
            return self.evaluator(Jet3.variable(s))
        except JetDomainError as exc:
            raise CurveDomainError(f"curve {self.name!r} undefined at s={s!r}: {exc}", s) from exc

    def point(self, s: float) -> tuple[float, float]:
        x, y = self.jets(s)
        return x.v0, y.v0

    def grid(self, n: int = GRID_SAMPLES) -> np.ndarray:
        return np.linspace(self.domain[0], self.domain[1], n)


# -- invariants ---------------------------------------------------------------


def _regular_denominator(curve: ProfileCurve, x: Jet3, y: Jet3, s: float) -> Jet3:
    den = curve.epsilon1 * (y * y - x * x)
    if not den.v0 > 0.0:
        raise CurveDomainError(
            f"regularity fails at s={s!r}: eps1*(y^2 - x^2) = {den.v0!r} <= 0", s
        )
    return den


def _check_domain(curve: ProfileCurve, s: float) -> None:
    if not curve.contains(s):
        raise CurveDomainError(f"s={s!r} outside domain {curve.domain!r}", s)


def abc_jets(curve: ProfileCurve, s: float, check_domain: bool = True) -> tuple[Jet3, Jet3, Jet3]:
    """Jets of a, b, c at s; the v0 and v1 slots are exact, higher slots are not."""
    if check_domain:
        _check_domain(curve, s)
    x, y = curve.jets(s)
    den = _regular_denominator(curve, x, y, s)
    xp, yp = x.derivative(), y.derivative()
    a = (x * xp - y * yp) / den
    b = (x * yp - xp * y) / den
    c = xp.derivative() * yp - xp * yp.derivative()
    return a, b, c


def invariants_abc(curve: ProfileCurve, s: float) -> tuple[float, float, float]:
    a, b, c = abc_jets(curve, s)
    return a.v0, b.v0, c.v0


def derived_invariants(curve: ProfileCurve, s: float) -> tuple[float, float, float]:
    """(a', b', c') at s via jet arithmetic."""
    a, b, c = abc_jets(curve, s)
    return a.v1, b.v1, c.v1


# -- validation ---------------------------------------------------------------


@dataclass
class ValidationReport:
    n_samples: int
    unit_speed_max: float
    regularity_min: float
    unit_speed_ok: bool
    regularity_ok: bool
    worst_unit_speed_s: float
    worst_regularity_s: float

    @property
    def ok(self) -> bool:
        return self.unit_speed_ok and self.regularity_ok

    def to_dict(self) -> dict:
        return {
            "n_samples": self.n_samples,
            "unit_speed_max": self.unit_speed_max,
            "regularity_min": self.regularity_min,
            "unit_speed_ok": self.unit_speed_ok,
            "regularity_ok": self.regularity_ok,
            "worst_unit_speed_s": self.worst_unit_speed_s,
            "worst_regularity_s": self.worst_regularity_s,
            "ok": self.ok,
        }


def validate(curve: ProfileCurve, grid=None, tol: Tolerances = DEFAULT_TOLERANCES) -> ValidationReport:
    """Check unit speed and regularity on ``grid`` (default: uniform over the domain)."""
    ss = curve.grid() if grid is None else np.asarray(grid, dtype=float)
    speed = np.empty(len(ss))
    reg = np.empty(len(ss))
    for k, s in enumerate(ss):
        try:
            x, y = curve.jets(float(s))
        except CurveDomainError:
            speed[k], reg[k] = math.inf, -math.inf
            continue
        speed[k] = abs(x.v1**2 - y.v1**2 - 1.0)
        reg[k] = curve.epsilon1 * (y.v0**2 - x.v0**2)
    iu, ir = int(np.argmax(speed)), int(np.argmin(reg))
    return ValidationReport(
        n_samples=len(ss),
        unit_speed_max=float(speed[iu]),
        regularity_min=float(reg[ir]),
        unit_speed_ok=bool(speed[iu] <= tol.constraint),
        regularity_ok=bool(reg[ir] > 0.0),
        worst_unit_speed_s=float(ss[iu]),
        worst_regularity_s=float(ss[ir]),
    )


# -- the classified exponential family ----------------------------------------


@dataclass(frozen=True)
class ExponentialFamilyParams:
    b0: float
    mu1: float
    mu2: float
    d: float = 0.0
    eps: int = 1

    def constraint_residual(self) -> float:
        return self.mu1 * self.mu2 + 1.0 / self.b0**2

    def check(self) -> None:
        if self.b0 == 0.0 or not math.isfinite(self.b0):
            raise ParameterError("b0 must be a non-zero finite number")
        if self.eps not in (1, -1):
            raise ParameterError(f"eps must be +1 or -1, got {self.eps!r}")
        res = self.constraint_residual()
        if not abs(res) <= 1e-12:
            raise ParameterError(
                f"mu1*mu2 = {self.mu1 * self.mu2!r} but -1/b0^2 = {-1.0 / self.b0**2!r}"
            )

    @classmethod
    def from_b0_mu1(cls, b0: float, mu1: float, d: float = 0.0, eps: int = 1) -> ExponentialFamilyParams:
        return cls(b0=b0, mu1=mu1, mu2=-1.0 / (b0 * b0 * mu1), d=d, eps=eps)

    def to_dict(self) -> dict:
        return {"b0": self.b0, "mu1": self.mu1, "mu2": self.mu2, "d": self.d, "eps": self.eps}


EXAMPLE1_PARAMS = ExponentialFamilyParams(b0=-1.0, mu1=-1.0, mu2=1.0, d=0.0, eps=1)


def synthesize_family(
    params: ExponentialFamilyParams, kind=None, domain: tuple[float, float] = (-2.0, 2.0)
) -> ProfileCurve:
    """Profile curve of the flat pointwise 1-type family.

    x = eps/2 (mu2 e^theta + mu1 e^-theta), y = eps/2 (mu2 e^theta - mu1 e^-theta),
    theta = -b0 s + d.  The same profile generates both rotation kinds, so
    ``kind`` is only recorded.
    """
    params.check()
    b0, mu1, mu2, d, eps = params.b0, params.mu1, params.mu2, params.d, params.eps

    def evaluator(S: Jet3):
        theta = -b0 * S + d
        up, down = mu2 * jet_exp(theta), mu1 * jet_exp(-theta)
        return 0.5 * eps * (up + down), 0.5 * eps * (up - down)

    spec = {"family": params.to_dict(), "epsilon1": 1, "domain": list(domain)}
    if kind is not None:
        spec["kind"] = str(getattr(kind, "value", kind))
    return ProfileCurve(evaluator, tuple(domain), 1, name="family", spec=spec)


# -- named analytic presets ---------------------------------------------------


def _sinh_cosh(S: Jet3):
    return jet_sinh(S), jet_cosh(S)


def _cosh_sinh(S: Jet3):
    return jet_cosh(S), jet_sinh(S)


def _line(k: float):
    if not abs(k) < 1.0:
        raise ParameterError("line preset needs |k| < 1 for unit speed")
    scale = 1.0 / math.sqrt(1.0 - k * k)

    def evaluator(S: Jet3):
        x = scale * S
        return x, k * x

    return evaluator


def _nonflat(S: Jet3):
    # x = int_0^s sqrt(1 + u^2) du, y = s^2 / 2
    root = jet_sqrt(1.0 + S * S)
    x = 0.5 * (S * root + jet_asinh(S))
    return x, 0.5 * S * S


def _flat_cone(k: float):
    # x = k s cosh(lam log s), y = k s sinh(lam log s): flat, a = 1/s, b = lam/s
    if not abs(k) > 1.0:
        raise ParameterError("flat_cone preset needs |k| > 1")
    lam = math.sqrt(k * k - 1.0) / abs(k)

    def evaluator(S: Jet3):
        psi = lam * jet_log(S)
        return k * S * jet_cosh(psi), k * S * jet_sinh(psi)

    return evaluator


# name -> (factory(params) -> evaluator, default eps1, default domain)
PRESETS: dict[str, tuple] = {
    "sinh_cosh": (lambda p: _sinh_cosh, 1, (-2.0, 2.0)),
    "cosh_sinh": (lambda p: _cosh_sinh, 1, (-2.0, 2.0)),
    "line": (lambda p: _line(float(p.get("k", 0.5))), -1, (0.5, 2.0)),
    "nonflat": (lambda p: _nonflat, -1, (1.0, 2.0)),
    "flat_cone": (lambda p: _flat_cone(float(p.get("k", 2.0))), -1, (0.5, 2.0)),
}


def analytic_curve(
    name: str,
    params: dict | None = None,
    epsilon1: int | None = None,
    domain: tuple[float, float] | None = None,
) -> ProfileCurve:
    if name not in PRESETS:
        raise ParameterError(f"unknown analytic preset {name!r}; known: {sorted(PRESETS)}")
    factory, eps1_default, dom_default = PRESETS[name]
    params = dict(params or {})
    eps1 = eps1_default if epsilon1 is None else int(epsilon1)
    dom = tuple(float(v) for v in (domain or dom_default))
    spec = {"analytic": {"name": name, **params}, "epsilon1": eps1, "domain": list(dom)}
    return ProfileCurve(factory(params), dom, eps1, name=name, spec=spec)


def sampled_curve(samples, epsilon1: int, domain: tuple[float, float] | None = None) -> ProfileCurve:
    """Curve interpolating tabulated ``[s, x, y]`` rows with quintic splines.

    Jets are the spline derivatives; accuracy is that of the interpolant.
    """
    from scipy.interpolate import make_interp_spline

    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 3 or arr.shape[0] < 6:
        raise ParameterError("samples must be at least 6 rows of [s, x, y]")
    order = np.argsort(arr[:, 0])
    arr = arr[order]
    if np.any(np.diff(arr[:, 0]) <= 0):
        raise ParameterError("sample abscissae must be distinct")
    sx = make_interp_spline(arr[:, 0], arr[:, 1], k=5)
    sy = make_interp_spline(arr[:, 0], arr[:, 2], k=5)
    dx = [sx.derivative(n) for n in (1, 2, 3)]
    dy = [sy.derivative(n) for n in (1, 2, 3)]
    lo, hi = float(arr[0, 0]), float(arr[-1, 0])
    dom = (lo, hi) if domain is None else tuple(float(v) for v in domain)
    if dom[0] < lo or dom[1] > hi:
        raise ParameterError(f"domain {dom!r} exceeds sampled range [{lo}, {hi}]")

    def evaluator(S: Jet3):
        s = S.v0
        if S.v1 != 1.0 or S.v2 != 0.0 or S.v3 != 0.0:
            raise ValueError("sampled curves evaluate at plain points only")
        jx = Jet3(float(sx(s)), *(float(f(s)) for f in dx))
        jy = Jet3(float(sy(s)), *(float(f(s)) for f in dy))
        return jx, jy

    spec = {"samples": arr.tolist(), "epsilon1": int(epsilon1), "domain": list(dom)}
    return ProfileCurve(evaluator, dom, int(epsilon1), name="samples", spec=spec)


def curve_from_spec(spec: dict) -> ProfileCurve:
    """Build a curve from the JSON curve format.

    Exactly one of ``family``, ``analytic`` or ``samples`` must be present,
    plus optional ``epsilon1`` and ``domain``.
    """
    keys = [k for k in ("family", "analytic", "samples") if k in spec]
    if len(keys) != 1:
        raise ParameterError("curve spec needs exactly one of 'family', 'analytic', 'samples'")
    domain = spec.get("domain")
    eps1 = spec.get("epsilon1")
    key = keys[0]
    if key == "family":
        fam = dict(spec["family"])
        try:
            b0 = float(fam["b0"])
            mu1 = float(fam["mu1"])
            mu2 = float(fam["mu2"]) if "mu2" in fam else -1.0 / (b0 * b0 * mu1)
            params = ExponentialFamilyParams(
                b0=b0, mu1=mu1, mu2=mu2, d=float(fam.get("d", 0.0)), eps=int(fam.get("eps", 1))
            )
        except (KeyError, TypeError, ZeroDivisionError) as exc:
            raise ParameterError(f"bad family parameters: {exc}") from exc
        if eps1 is not None and int(eps1) != 1:
            raise ParameterError("the exponential family forces epsilon1 = 1")
        return synthesize_family(params, domain=tuple(domain) if domain else (-2.0, 2.0))
    if key == "analytic":
        ana = dict(spec["analytic"])
        name = ana.pop("name", None)
        if name is None:
            raise ParameterError("analytic curve spec needs a 'name'")
        return analytic_curve(name, ana, eps1, tuple(domain) if domain else None)
    if eps1 is None:
        raise ParameterError("sampled curves need an explicit epsilon1")
    return sampled_curve(spec["samples"], int(eps1), tuple(domain) if domain else None)
