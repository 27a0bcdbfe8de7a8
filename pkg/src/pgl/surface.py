"""Rotation surfaces M1 (hyperbolic) and M2 (elliptic) in E^4_2.

Every quantity here comes from closed forms in x, y and the invariants
a, b, c; no tangent basis is ever orthonormalized numerically.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .algebra import PseudoVector4, inner4
from .profile import CurveDomainError, ProfileCurve, abc_jets, _check_domain, _regular_denominator


class SurfaceKind(str, enum.Enum):
    M1 = "M1_hyperbolic"
    M2 = "M2_elliptic"

    @classmethod
    def parse(cls, value) -> SurfaceKind:
        if isinstance(value, cls):
            return value
        key = str(value).strip()
        for kind in cls:
            if key in (kind.value, kind.name) or key.lower() in (kind.value.lower(), kind.name.lower()):
                return kind
        aliases = {"hyperbolic": cls.M1, "elliptic": cls.M2}
        if key.lower() in aliases:
            return aliases[key.lower()]
        raise ValueError(f"unknown surface kind {value!r}")


@dataclass(frozen=True)
class FrameAtPoint:
    e1: PseudoVector4
    e2: PseudoVector4
    e3: PseudoVector4
    e4: PseudoVector4
    signs: tuple[int, int, int, int]

    def vectors(self) -> tuple[PseudoVector4, ...]:
        return (self.e1, self.e2, self.e3, self.e4)

    def gram(self) -> list[list[float]]:
        vs = self.vectors()
        return [[inner4(u, v) for v in vs] for u in vs]


def frame_signs(kind: SurfaceKind, epsilon1: int) -> tuple[int, int, int, int]:
    if kind is SurfaceKind.M1:
        return (epsilon1, 1, -1, -epsilon1)
    return (-epsilon1, 1, -1, epsilon1)


@dataclass(frozen=True)
class ShapeData:
    """Second fundamental form and connection forms at one s.

    ``h3``/``h4`` are (h_11, h_12, h_22) of the normals e3/e4.  ``omega``
    maps "12", "13", ... to the (omega_1, omega_2) coefficients of the
    connection form omega_AB.
    """

    a: float
    b: float
    c: float
    h3: tuple[float, float, float]
    h4: tuple[float, float, float]
    omega: dict[str, tuple[float, float]]


def eval_surface(kind: SurfaceKind, curve: ProfileCurve, t: float, s: float) -> PseudoVector4:
    kind = SurfaceKind.parse(kind)
    _check_domain(curve, s)
    x, y = curve.point(s)
    if kind is SurfaceKind.M1:
        ch, sh = math.cosh(t), math.sinh(t)
        return PseudoVector4(y * sh, x * ch, x * sh, y * ch)
    cs, sn = math.cos(t), math.sin(t)
    return PseudoVector4(x * cs, x * sn, y * cs, y * sn)


def _frame_values(kind: SurfaceKind, x: float, y: float, xp: float, yp: float, root: float, t: float):
    if kind is SurfaceKind.M1:
        ch, sh = math.cosh(t), math.sinh(t)
        e1 = PseudoVector4(y * ch, x * sh, x * ch, y * sh) * (1.0 / root)
        e2 = PseudoVector4(yp * sh, xp * ch, xp * sh, yp * ch)
        e3 = PseudoVector4(xp * sh, yp * ch, yp * sh, xp * ch)
        e4 = PseudoVector4(x * ch, y * sh, y * ch, x * sh) * (1.0 / root)
    else:
        cs, sn = math.cos(t), math.sin(t)
        e1 = PseudoVector4(-x * sn, x * cs, -y * sn, y * cs) * (1.0 / root)
        e2 = PseudoVector4(xp * cs, xp * sn, yp * cs, yp * sn)
        e3 = PseudoVector4(yp * cs, yp * sn, xp * cs, xp * sn)
        e4 = PseudoVector4(y * sn, -y * cs, x * sn, -x * cs) * (1.0 / root)
    return e1, e2, e3, e4


def frame(kind: SurfaceKind, curve: ProfileCurve, t: float, s: float) -> FrameAtPoint:
    """Adapted frame: e1 is the normalized t-tangent, e2 = d/ds, e3 and e4 normal."""
    kind = SurfaceKind.parse(kind)
    _check_domain(curve, s)
    x, y = curve.jets(s)
    den = _regular_denominator(curve, x, y, s)
    vecs = _frame_values(kind, x.v0, y.v0, x.v1, y.v1, math.sqrt(den.v0), t)
    return FrameAtPoint(*vecs, signs=frame_signs(kind, curve.epsilon1))


def shape_data(kind: SurfaceKind, curve: ProfileCurve, s: float) -> ShapeData:
    kind = SurfaceKind.parse(kind)
    aj, bj, cj = abc_jets(curve, s)
    a, b, c = aj.v0, bj.v0, cj.v0
    e = curve.epsilon1
    if kind is SurfaceKind.M1:
        h3 = (b, 0.0, c)
        sign = 1.0
    else:
        h3 = (-b, 0.0, c)
        sign = -1.0
    omega = {
        "12": (e * a, 0.0),
        "13": (e * b, 0.0),
        "14": (0.0, b),
        "23": (0.0, c),
        "24": (sign * e * b, 0.0),
        "34": (sign * e * a, 0.0),
    }
    return ShapeData(a=a, b=b, c=c, h3=h3, h4=(0.0, b, 0.0), omega=omega)


def gaussian_curvature(kind: SurfaceKind, curve: ProfileCurve, s: float) -> float:
    kind = SurfaceKind.parse(kind)
    aj, bj, cj = abc_jets(curve, s)
    b, c = bj.v0, cj.v0
    k1 = curve.epsilon1 * b * b - b * c
    return k1 if kind is SurfaceKind.M1 else -k1


def flatness_bc_residual(curve: ProfileCurve, s: float) -> float:
    """b c - b^2; equals -K only when eps1 = 1."""
    _, bj, cj = abc_jets(curve, s)
    return bj.v0 * cj.v0 - bj.v0**2


def gauss_codazzi_residuals(curve: ProfileCurve, s: float) -> tuple[float, float]:
    """Left-minus-right of the Gauss and Codazzi equations at s (kind independent)."""
    aj, bj, cj = abc_jets(curve, s)
    e = curve.epsilon1
    a, b, c = aj.v0, bj.v0, cj.v0
    gauss = (e * a * a - aj.v1) - (b * c - e * b * b)
    codazzi = bj.v1 - (2.0 * e * a * b - a * c)
    return gauss, codazzi


def covariant_derivative_table(
    kind: SurfaceKind, curve: ProfileCurve, t: float, s: float
) -> dict[tuple[int, int], PseudoVector4]:
    """Ambient derivatives D_{e_i} e_A for i in (1, 2), A in (1..4)."""
    kind = SurfaceKind.parse(kind)
    fr = frame(kind, curve, t, s)
    aj, bj, cj = abc_jets(curve, s)
    a, b, c = aj.v0, bj.v0, cj.v0
    e = curve.epsilon1
    e1, e2, e3, e4 = fr.vectors()
    if kind is SurfaceKind.M1:
        return {
            (1, 1): a * e2 - b * e3,
            (2, 1): -e * b * e4,
            (1, 2): -e * a * e1 - e * b * e4,
            (2, 2): -c * e3,
            (1, 3): -e * b * e1 - e * a * e4,
            (2, 3): -c * e2,
            (1, 4): -b * e2 + a * e3,
            (2, 4): -e * b * e1,
        }
    return {
        (1, 1): -a * e2 + b * e3,
        (2, 1): e * b * e4,
        (1, 2): -e * a * e1 + e * b * e4,
        (2, 2): -c * e3,
        (1, 3): -e * b * e1 + e * a * e4,
        (2, 3): -c * e2,
        (1, 4): -b * e2 + a * e3,
        (2, 4): e * b * e1,
    }


def t_range_default(kind: SurfaceKind) -> tuple[float, float]:
    from .config import T_HALF_WIDTH_M1

    if SurfaceKind.parse(kind) is SurfaceKind.M1:
        return (-T_HALF_WIDTH_M1, T_HALF_WIDTH_M1)
    return (0.0, 2.0 * math.pi)


__all__ = [
    "CurveDomainError",
    "FrameAtPoint",
    "ShapeData",
    "SurfaceKind",
    "covariant_derivative_table",
    "eval_surface",
    "flatness_bc_residual",
    "frame",
    "frame_signs",
    "gauss_codazzi_residuals",
    "gaussian_curvature",
    "shape_data",
    "t_range_default",
]
