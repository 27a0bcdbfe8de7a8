"""Vectors of E^4_2 and bivectors of its exterior square.

The ambient metric is fixed to signature (+, +, -, -).  Bivectors are stored
on the lexicographic basis (12, 13, 14, 23, 24, 34); the induced metric on
that basis is diagonal with signs (+, -, -, -, -, +).
"""

from __future__ import annotations

from dataclasses import astuple, dataclass
from itertools import combinations

import numpy as np

METRIC_SIGNS = (1.0, 1.0, -1.0, -1.0)

# (i, j) index pairs, 0-based, in storage order
BIVECTOR_PAIRS = tuple(combinations(range(4), 2))
BIVECTOR_LABELS = tuple(f"{i + 1}{j + 1}" for i, j in BIVECTOR_PAIRS)
BIVECTOR_SIGNS = tuple(METRIC_SIGNS[i] * METRIC_SIGNS[j] for i, j in BIVECTOR_PAIRS)


@dataclass(frozen=True)
class PseudoVector4:
    x1: float
    x2: float
    x3: float
    x4: float

    @classmethod
    def from_array(cls, values) -> PseudoVector4:
        v = [float(c) for c in values]
        if len(v) != 4:
            raise ValueError(f"expected 4 components, got {len(v)}")
        return cls(*v)

    @classmethod
    def basis(cls, k: int) -> PseudoVector4:
        """Standard basis vector epsilon_k, 1-based."""
        v = [0.0] * 4
        v[k - 1] = 1.0
        return cls(*v)

    def array(self) -> np.ndarray:
        return np.array(astuple(self))

    def __iter__(self):
        return iter(astuple(self))

    def __add__(self, other: PseudoVector4) -> PseudoVector4:
        return PseudoVector4(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other: PseudoVector4) -> PseudoVector4:
        return PseudoVector4(*(a - b for a, b in zip(self, other)))

    def __neg__(self) -> PseudoVector4:
        return PseudoVector4(*(-a for a in self))

    def __mul__(self, k: float) -> PseudoVector4:
        return PseudoVector4(*(k * a for a in self))

    __rmul__ = __mul__


@dataclass(frozen=True)
class Bivector:
    c12: float = 0.0
    c13: float = 0.0
    c14: float = 0.0
    c23: float = 0.0
    c24: float = 0.0
    c34: float = 0.0

    @classmethod
    def from_array(cls, values) -> Bivector:
        v = [float(c) for c in values]
        if len(v) != 6:
            raise ValueError(f"expected 6 components, got {len(v)}")
        return cls(*v)

    @classmethod
    def zero(cls) -> Bivector:
        return cls()

    def array(self) -> np.ndarray:
        return np.array(astuple(self))

    def __iter__(self):
        return iter(astuple(self))

    def __add__(self, other: Bivector) -> Bivector:
        return Bivector(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other: Bivector) -> Bivector:
        return Bivector(*(a - b for a, b in zip(self, other)))

    def __neg__(self) -> Bivector:
        return Bivector(*(-a for a in self))

    def __mul__(self, k: float) -> Bivector:
        return Bivector(*(k * a for a in self))

    __rmul__ = __mul__

    def max_abs(self) -> float:
        return max(abs(a) for a in self)


def inner4(u: PseudoVector4, v: PseudoVector4) -> float:
    return u.x1 * v.x1 + u.x2 * v.x2 - u.x3 * v.x3 - u.x4 * v.x4


def wedge(u: PseudoVector4, v: PseudoVector4) -> Bivector:
    a, b = tuple(u), tuple(v)
    return Bivector(*(a[i] * b[j] - a[j] * b[i] for i, j in BIVECTOR_PAIRS))


def inner6(A: Bivector, B: Bivector) -> float:
    return sum(sig * p * q for sig, p, q in zip(BIVECTOR_SIGNS, A, B))


def gram_inner6(u: PseudoVector4, v: PseudoVector4, w: PseudoVector4, z: PseudoVector4) -> float:
    """<u^v, w^z> as the 2x2 Gram determinant of ambient inner products."""
    return inner4(u, w) * inner4(v, z) - inner4(u, z) * inner4(v, w)
