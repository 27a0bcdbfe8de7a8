"""Order-3 truncated Taylor jets in one variable.

A :class:`Jet3` carries ``(f, f', f'', f''')`` at a point.  Composition with
elementary functions uses the order-3 Faa di Bruno formula, so derivatives of
closed-form profile curves are exact up to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class JetDomainError(ValueError):
    """Raised when a jet operation leaves the domain of the function."""


@dataclass(frozen=True)
class Jet3:
    v0: float
    v1: float = 0.0
    v2: float = 0.0
    v3: float = 0.0

    @classmethod
    def variable(cls, s: float) -> Jet3:
        """Jet of the identity function at ``s``."""
        return cls(float(s), 1.0, 0.0, 0.0)

    @classmethod
    def constant(cls, c: float) -> Jet3:
        return cls(float(c))

    def __iter__(self):
        return iter((self.v0, self.v1, self.v2, self.v3))

    def derivative(self) -> Jet3:
        """Jet of f' (the order-3 slot is unknown and set to NaN)."""
        return Jet3(self.v1, self.v2, self.v3, math.nan)

    def __add__(self, other) -> Jet3:
        o = _lift(other)
        return Jet3(self.v0 + o.v0, self.v1 + o.v1, self.v2 + o.v2, self.v3 + o.v3)

    __radd__ = __add__

    def __neg__(self) -> Jet3:
        return Jet3(-self.v0, -self.v1, -self.v2, -self.v3)

    def __sub__(self, other) -> Jet3:
        return self + (-_lift(other))

    def __rsub__(self, other) -> Jet3:
        return _lift(other) - self

    def __mul__(self, other) -> Jet3:
        b = _lift(other)
        a = self
        return Jet3(
            a.v0 * b.v0,
            a.v1 * b.v0 + a.v0 * b.v1,
            a.v2 * b.v0 + 2.0 * a.v1 * b.v1 + a.v0 * b.v2,
            a.v3 * b.v0 + 3.0 * a.v2 * b.v1 + 3.0 * a.v1 * b.v2 + a.v0 * b.v3,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> Jet3:
        return self * reciprocal(_lift(other))

    def __rtruediv__(self, other) -> Jet3:
        return _lift(other) * reciprocal(self)

    def __pow__(self, n: int) -> Jet3:
        if not isinstance(n, int) or n < 0:
            raise TypeError("only non-negative integer powers are supported")
        out = Jet3(1.0)
        for _ in range(n):
            out = out * self
        return out


def _lift(x) -> Jet3:
    if isinstance(x, Jet3):
        return x
    return Jet3(float(x))


def compose(u: Jet3, f0: float, f1: float, f2: float, f3: float) -> Jet3:
    """Jet of ``f(u)`` given ``f`` and its first three derivatives at ``u.v0``."""
    return Jet3(
        f0,
        f1 * u.v1,
        f2 * u.v1**2 + f1 * u.v2,
        f3 * u.v1**3 + 3.0 * f2 * u.v1 * u.v2 + f1 * u.v3,
    )


def reciprocal(u: Jet3) -> Jet3:
    x = u.v0
    if x == 0.0:
        raise JetDomainError("division by a jet with zero value")
    r = 1.0 / x
    return compose(u, r, -(r**2), 2.0 * r**3, -6.0 * r**4)


def jet_add(a: Jet3, b: Jet3) -> Jet3:
    return a + b


def jet_mul(a: Jet3, b: Jet3) -> Jet3:
    return a * b


def jet_div(a: Jet3, b: Jet3) -> Jet3:
    return a / b


def jet_exp(u: Jet3) -> Jet3:
    e = math.exp(u.v0)
    return compose(u, e, e, e, e)


def jet_sinh(u: Jet3) -> Jet3:
    sh, ch = math.sinh(u.v0), math.cosh(u.v0)
    return compose(u, sh, ch, sh, ch)


def jet_cosh(u: Jet3) -> Jet3:
    sh, ch = math.sinh(u.v0), math.cosh(u.v0)
    return compose(u, ch, sh, ch, sh)


def jet_sin(u: Jet3) -> Jet3:
    sn, cs = math.sin(u.v0), math.cos(u.v0)
    return compose(u, sn, cs, -sn, -cs)


def jet_cos(u: Jet3) -> Jet3:
    sn, cs = math.sin(u.v0), math.cos(u.v0)
    return compose(u, cs, -sn, -cs, sn)


def jet_sqrt(u: Jet3) -> Jet3:
    x = u.v0
    if not x > 0.0:
        raise JetDomainError(f"square root of non-positive value {x!r}")
    r = math.sqrt(x)
    return compose(u, r, 0.5 / r, -0.25 / (r * x), 0.375 / (r * x * x))


def jet_log(u: Jet3) -> Jet3:
    x = u.v0
    if not x > 0.0:
        raise JetDomainError(f"logarithm of non-positive value {x!r}")
    r = 1.0 / x
    return compose(u, math.log(x), r, -(r**2), 2.0 * r**3)


def jet_asinh(u: Jet3) -> Jet3:
    x = u.v0
    q = 1.0 + x * x
    r = math.sqrt(q)
    return compose(u, math.asinh(x), 1.0 / r, -x / (q * r), (2.0 * x * x - 1.0) / (q * q * r))
