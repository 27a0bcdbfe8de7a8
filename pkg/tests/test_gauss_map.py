import math

import numpy as np
import pytest
import sympy as sp

from pgl.algebra import BIVECTOR_PAIRS, inner6
from pgl.gauss_map import (
    CALIBRATION_POINTS,
    calibrate,
    fd_laplace_beltrami,
    gauss_map_at,
    laplacian_closed,
    laplacian_frame_coefficients,
    laplacian_numeric,
    parameter_grid,
    sample_grid,
)
from pgl.profile import ExponentialFamilyParams, synthesize_family
from pgl.surface import SurfaceKind, frame_signs

KINDS = list(SurfaceKind)


def _sympy_laplacian(kind, t0, s0):
    """-(Laplace-Beltrami) of G on the nonflat profile, built from scratch in sympy."""
    t, s = sp.symbols("t s", real=True)
    y = s**2 / 2
    x = (s * sp.sqrt(1 + s**2) + sp.asinh(s)) / 2
    eps1 = -1
    E = eps1 * (y**2 - x**2)
    if kind is SurfaceKind.M1:
        X = sp.Matrix([y * sp.sinh(t), x * sp.cosh(t), x * sp.sinh(t), y * sp.cosh(t)])
    else:
        X = sp.Matrix([x * sp.cos(t), x * sp.sin(t), y * sp.cos(t), y * sp.sin(t)])
    e1 = sp.diff(X, t) / sp.sqrt(E)
    e2 = sp.diff(X, s)
    G = [e1[i] * e2[j] - e1[j] * e2[i] for i, j in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))]
    w = frame_signs(kind, eps1)[0]
    root = sp.sqrt(E)
    out = []
    for g in G:
        lb = w * sp.diff(g, t, 2) / E + sp.diff(root * sp.diff(g, s), s) / root
        out.append(float(-lb.subs({t: t0, s: s0})))
    return np.array(out)


@pytest.mark.parametrize("kind", KINDS)
def test_closed_form_matches_sympy_on_nonflat(kind, nonflat_curve):
    for t0, s0 in ((0.3, 1.4), (-0.6, 1.8)):
        want = _sympy_laplacian(kind, t0, s0)
        got = laplacian_closed(kind, nonflat_curve, t0, s0).array()
        assert np.max(np.abs(got - want)) <= 1e-10


def test_gauss_map_norm(example1_curve, nonflat_curve, cone_curve, rng):
    for curve in (example1_curve, nonflat_curve, cone_curve):
        lo, hi = curve.domain
        for s in rng.uniform(lo, hi, 20):
            t = float(rng.uniform(-2, 2))
            assert inner6(*(gauss_map_at(SurfaceKind.M1, curve, t, s),) * 2) == pytest.approx(curve.epsilon1, abs=1e-10)
            assert inner6(*(gauss_map_at(SurfaceKind.M2, curve, t, s),) * 2) == pytest.approx(-curve.epsilon1, abs=1e-10)


@pytest.mark.parametrize("kind", KINDS)
def test_family_laplacian_is_multiple_of_g(kind):
    for params in (
        ExponentialFamilyParams(b0=-1.0, mu1=-1.0, mu2=1.0),
        ExponentialFamilyParams.from_b0_mu1(2.0, 0.7, d=-0.4),
        ExponentialFamilyParams.from_b0_mu1(-0.6, -3.0, d=0.9, eps=-1),
    ):
        curve = synthesize_family(params)
        for t, s in ((0.1, -0.5), (1.2, 0.9)):
            G = gauss_map_at(kind, curve, t, s).array()
            lap = laplacian_closed(kind, curve, t, s).array()
            assert np.max(np.abs(lap + 4 * params.b0**2 * G)) <= 1e-9 * max(1, 4 * params.b0**2)


def test_totally_geodesic_line_is_harmonic(line_curve):
    for kind in KINDS:
        for s in line_curve.grid(9):
            assert laplacian_closed(kind, line_curve, 0.4, s).max_abs() <= 1e-13
            assert laplacian_numeric(kind, line_curve, 0.4, min(max(s, 0.51), 1.99), convention="weighted").max_abs() <= 1e-6


@pytest.mark.parametrize("kind", KINDS)
def test_cone_has_tangential_term(kind, cone_curve):
    # flat with a != 0: the e1^e3 and e2^e4 components do not vanish
    coeffs = laplacian_frame_coefficients(kind, cone_curve, 1.2)
    assert abs(coeffs["e1^e3"]) > 1e-3 or abs(coeffs["e2^e4"]) > 1e-3
    num = laplacian_numeric(kind, cone_curve, 0.3, 1.2, h=1e-3, convention="weighted", richardson=True)
    assert np.max(np.abs(num.array() - laplacian_closed(kind, cone_curve, 0.3, 1.2).array())) <= 1e-7


@pytest.mark.parametrize("kind", KINDS)
def test_numeric_converges_second_order(kind, nonflat_curve):
    closed = laplacian_closed(kind, nonflat_curve, 0.2, 1.5).array()
    errs = [
        np.max(np.abs(laplacian_numeric(kind, nonflat_curve, 0.2, 1.5, h=h, convention="weighted").array() - closed))
        for h in (4e-3, 2e-3)
    ]
    assert 3.5 <= errs[0] / errs[1] <= 4.5


def test_unweighted_convention_differs_on_indefinite_metric(example1_curve):
    t, s = 0.3, 0.7
    closed = laplacian_closed(SurfaceKind.M2, example1_curve, t, s).array()
    good = laplacian_numeric(SurfaceKind.M2, example1_curve, t, s, convention="weighted").array()
    bad = laplacian_numeric(SurfaceKind.M2, example1_curve, t, s, convention="unweighted").array()
    assert np.max(np.abs(good - closed)) < 1e-5 < np.max(np.abs(bad - closed))


def test_fd_operator_kills_constants(example1_curve):
    const = lambda t, s: np.array([1.0, -2.0, 3.0])  # noqa: E731
    out = fd_laplace_beltrami(const, example1_curve, 0.1, 0.2, 1e-3, -1.0)
    assert np.max(np.abs(out)) == 0.0


def test_stencil_outside_domain_raises(nonflat_curve):
    from pgl.profile import CurveDomainError

    with pytest.raises(CurveDomainError):
        laplacian_numeric(SurfaceKind.M1, nonflat_curve, 0.0, 1.0005)


def test_calibration_is_deterministic():
    first = calibrate()
    calibrate.cache_clear()
    second = calibrate()
    assert first == second
    assert first.convention == "weighted"
    assert first.points == CALIBRATION_POINTS
    assert max(first.errors["unweighted"].values()) > 1.0


def test_sample_grid_shape_and_periodic_t(example1_curve):
    pts = parameter_grid((0, 2 * math.pi), (-1, 1), 8, 5, periodic_t=True)
    assert len(pts) == 40 and max(p[0] for p in pts) < 2 * math.pi
    samples = sample_grid(SurfaceKind.M2, example1_curve, pts)
    assert [(sm.t, sm.s) for sm in samples] == pts
    assert all(set(sm.frame_bivectors) >= {"e1^e2", "e3^e4"} for sm in samples)
    assert len(BIVECTOR_PAIRS) == 6
