"""Numerical tolerances and sampling defaults, kept in one place."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    identity: float = 1e-8  # Gauss / Codazzi residuals
    constraint: float = 1e-9  # unit speed, mu1*mu2 = -1/b0^2 is checked at 1e-12 separately
    frame: float = 1e-10  # off-diagonal Gram entries
    flat: float = 1e-9  # max |K| for a flat verdict
    geodesic: float = 1e-10  # max |b|, |c| for a totally geodesic verdict
    harmonic: float = 1e-12  # max |Delta G| (absolute) for a harmonic verdict
    detect: float = 1e-6  # relative residual for the 1-type decision
    C: float = 1e-8  # ||C||_inf below which C counts as zero
    f_const: float = 1e-7  # relative spread of f for global 1-type

    def to_dict(self) -> dict:
        return asdict(self)

    def with_overrides(self, **kw) -> Tolerances:
        kw = {k: float(v) for k, v in kw.items() if v is not None}
        return replace(self, **kw)


DEFAULT_TOLERANCES = Tolerances()

GRID_SAMPLES = 257
FD_STEP = 1e-3
T_HALF_WIDTH_M1 = 2.0
ALS_MAX_ITER = 100
ALS_STEP_TOL = 1e-12


def thread_cap() -> int:
    """Worker count from ``PGL_THREADS`` (default 1, i.e. sequential)."""
    raw = os.environ.get("PGL_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)
