"""Tests for the test-function family and the adaptive quadrature engine."""

import math

import numpy as np
import pytest

from siegelsums.arith import IwasawaCoords, iota
from siegelsums.quadrature import (
    adaptive_quad,
    bump,
    default_test_function,
    default_varphi,
    phi_eval,
    phi_matrix_entries,
)

# ============================================================
# bump and default varphi
# ============================================================


def test_bump_values():
    assert bump(np.array([0.0]))[0] == pytest.approx(math.exp(-1.0))
    assert bump(np.array([1.0]))[0] == 0.0
    assert bump(np.array([-1.0]))[0] == 0.0
    assert bump(np.array([2.5]))[0] == 0.0
    # symmetric and positive inside
    xs = np.linspace(-0.99, 0.99, 101)
    vals = bump(xs)
    assert np.all(vals > 0)
    assert np.allclose(vals, vals[::-1])


def test_bump_scalar_and_array():
    assert float(bump(0.5)) == pytest.approx(math.exp(-1.0 / (1.0 - 0.25)))
    arr = bump(np.array([[0.0, 3.0], [0.5, -0.5]]))
    assert arr.shape == (2, 2)
    assert arr[0, 1] == 0.0
    assert arr[1, 0] == arr[1, 1]


def test_default_varphi_peak_and_support():
    # peak at the center of the support box
    assert default_varphi(0.0, 1.5, 1.5) == pytest.approx(math.exp(-3.0))
    # outside the declared box -> identically zero
    assert default_varphi(2.0, 1.5, 1.5) == 0.0
    assert default_varphi(2.5, 1.5, 1.5) == 0.0
    assert default_varphi(0.0, 0.9, 1.5) == 0.0
    assert default_varphi(0.0, 1.5, 2.1) == 0.0
    assert default_varphi(0.0, 1.0, 1.5) == 0.0  # boundary
    # interior positivity
    assert default_varphi(1.0, 1.2, 1.8) > 0


# ============================================================
# TestFunction construction and phi evaluation
# ============================================================


def test_default_test_function_fields():
    tf = default_test_function()
    assert tf.n == 4.0
    assert tf.k == 10
    assert (tf.u_max, tf.t_lo, tf.t_hi) == (2.0, 1.0, 2.0)


@pytest.mark.parametrize("bad", [dict(n=0.5), dict(k=8), dict(k=11)])
def test_default_test_function_validation(bad):
    with pytest.raises(ValueError):
        default_test_function(**bad)


def test_phi_eval_peak():
    # u = 0, r1 = r2 = 1.5/N hits varphi's peak
    tf = default_test_function(n=4.0)
    val = phi_eval(tf, IwasawaCoords(0.0, 1.5 / 4.0, 1.5 / 4.0))
    assert val == pytest.approx(math.exp(-3.0))


def test_phi_eval_outside_support():
    tf = default_test_function(n=4.0)
    assert phi_eval(tf, IwasawaCoords(0.0, 10.0, 10.0)) == 0.0
    assert phi_eval(tf, IwasawaCoords(3.0, 0.375, 0.375)) == 0.0


def test_phi_eval_requires_positive_r():
    tf = default_test_function()
    with pytest.raises(ValueError):
        phi_eval(tf, IwasawaCoords(0.0, -1.0, 0.5))
    with pytest.raises(ValueError):
        phi_eval(tf, IwasawaCoords(0.0, 0.5, 0.0))


def test_phi_eval_scaling_in_n():
    # phi depends on Y only through (u, N r1, N r2): doubling N and
    # halving r1, r2 leaves the value unchanged.
    tf1 = default_test_function(n=4.0)
    tf2 = default_test_function(n=8.0)
    for (u, r1, r2) in [(0.0, 0.3, 0.4), (1.0, 0.45, 0.3), (-1.5, 0.26, 0.49)]:
        a = phi_eval(tf1, IwasawaCoords(u, r1, r2))
        b = phi_eval(tf2, IwasawaCoords(u, r1 / 2.0, r2 / 2.0))
        assert a == pytest.approx(b, abs=1e-15)


def test_phi_matrix_entries_matches_phi_eval():
    tf = default_test_function()
    rng = np.random.default_rng(5)
    for _ in range(50):
        u = rng.uniform(-2.5, 2.5)
        r1 = rng.uniform(0.05, 0.8)
        r2 = rng.uniform(0.05, 0.8)
        y = iota(IwasawaCoords(u, r1, r2))
        got = phi_matrix_entries(
            tf,
            np.array([y[0, 0]]),
            np.array([y[0, 1]]),
            np.array([y[1, 1]]),
        )[0]
        assert got == pytest.approx(phi_eval(tf, IwasawaCoords(u, r1, r2)), abs=1e-15)


def test_phi_matrix_entries_non_posdef_is_zero():
    tf = default_test_function()
    m11 = np.array([1.0, -1.0, 0.0, 1.0])
    m12 = np.array([0.0, 0.0, 0.0, 2.0])
    m22 = np.array([-1.0, 1.0, 0.0, 1.0])  # indefinite / zero / det<0
    vals = phi_matrix_entries(tf, m11, m12, m22)
    assert np.all(vals == 0.0)


# ============================================================
# adaptive quadrature engine
# ============================================================


def test_adaptive_quad_polynomial_exact():
    # int_0^1 int_0^1 x^3 y^2 dx dy = 1/12
    res = adaptive_quad(
        lambda pts: pts[:, 0] ** 3 * pts[:, 1] ** 2,
        ((0.0, 1.0), (0.0, 1.0)),
    )
    assert res.value == pytest.approx(1.0 / 12.0, rel=1e-13)


def test_adaptive_quad_gaussian_1d():
    res = adaptive_quad(
        lambda pts: np.exp(-pts[:, 0] ** 2),
        ((-8.0, 8.0),),
        tol=1e-12,
        max_depth=6,
    )
    assert res.value == pytest.approx(math.sqrt(math.pi), rel=1e-10)
    assert res.abs_error_estimate >= 0


def test_adaptive_quad_oscillatory_3d():
    # int over [0,1]^3 of cos(2 pi (x+y+z)) = (sin(2 pi)/2 pi)^3 real part:
    # each axis integrates to 0, so the product integral is 0... use a
    # computable nonzero case instead: int cos(x+y+z) over [0,1]^3
    res = adaptive_quad(
        lambda pts: np.cos(pts[:, 0] + pts[:, 1] + pts[:, 2]),
        ((0.0, 1.0),) * 3,
        tol=1e-12,
        max_depth=5,
    )
    # = Re[ (e^i - 1)/i ]^3 expanded: (2 sin(1/2))^3 cos(3/2)
    exact = (2.0 * math.sin(0.5)) ** 3 * math.cos(1.5)
    assert res.value == pytest.approx(exact, rel=1e-12)


def test_adaptive_quad_complex_integrand():
    res = adaptive_quad(
        lambda pts: np.exp(2j * math.pi * pts[:, 0]),
        ((0.0, 0.25),),
        tol=1e-12,
        max_depth=5,
    )
    exact = (np.exp(2j * math.pi * 0.25) - 1.0) / (2j * math.pi)
    assert abs(res.value - exact) < 1e-12


def test_adaptive_quad_empty_box():
    res = adaptive_quad(lambda pts: pts[:, 0], ((1.0, 1.0),))
    assert res.value == 0.0
    assert res.abs_error_estimate == 0.0
    assert "empty" in res.region
    res2 = adaptive_quad(lambda pts: pts[:, 0], ((2.0, -2.0), (0.0, 1.0)))
    assert res2.value == 0.0


def test_adaptive_quad_tolerance_refinement():
    # QuadResult contract: tightening the tolerance by 10x moves the value
    # by at most 3x the previously reported estimate.
    def f(pts):
        return np.exp(-pts[:, 0] ** 2 - 2.0 * pts[:, 1] ** 2) * np.cos(
            3.0 * pts[:, 0] * pts[:, 1]
        )

    box = ((-2.0, 2.0), (-2.0, 2.0))
    coarse = adaptive_quad(f, box, tol=1e-6, max_depth=6)
    fine = adaptive_quad(f, box, tol=1e-7, max_depth=6)
    assert abs(fine.value - coarse.value) <= 3.0 * coarse.abs_error_estimate + 1e-15


def test_adaptive_quad_reports_region():
    res = adaptive_quad(lambda pts: pts[:, 0] * 0 + 1.0, ((0.0, 2.0), (-1.0, 1.0)))
    assert "[0, 2]" in res.region
    assert "[-1, 1]" in res.region
