"""Compactly supported test functions and an error-estimating quadrature
engine for the integral transforms.

The test-function family is

    phi(Y) = varphi(u, N r1, N r2),    Y = [[r1 + u^2 r2, u r2], [u r2, r2]],

with varphi smooth of compact support. The default choice is the standard
bump rho(x) = exp(-1/(1 - x^2)) on |x| < 1 (else 0), combined as

    varphi(u, t1, t2) = rho(u/2) * rho(2 t1 - 3) * rho(2 t2 - 3),

supported on u in [-2, 2] and t1, t2 in [1, 2]; in particular t1 and t2
are comparable to 1 on the support, as the weight-function estimates
require.

The quadrature engine integrates a vectorized integrand over an axis
box by tensor-product Gauss-Legendre panels, doubling the panel count
per axis until two consecutive refinements agree within an absolute
tolerance.  The difference of the last two refinements is reported as
the error estimate; when the depth limit is reached without meeting the
tolerance the (degraded) estimate is still reported rather than
silently trusting the value.
"""

import math
from typing import Callable, NamedTuple

import numpy as np


class TestFunction(NamedTuple):
    """A compactly supported weight varphi with its scale N and weight k.

    varphi must be vectorized over numpy arrays; its support must lie in
    |u| <= u_max, t1, t2 in [t_lo, t_hi] with 0 < t_lo < t_hi.
    """

    varphi: Callable
    n: float
    k: int
    u_max: float
    t_lo: float
    t_hi: float


class QuadResult(NamedTuple):
    """A quadrature value with its refinement-difference error estimate."""

    value: complex
    abs_error_estimate: float
    region: str


# ============================================================
# default bump family
# ============================================================


def bump(x):
    """rho(x) = exp(-1/(1-x^2)) for |x| < 1, else 0 (vectorized)."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    with np.errstate(invalid="ignore"):
        inside = np.abs(x) < 1
    xi = x[inside]
    out[inside] = np.exp(-1.0 / (1.0 - xi * xi))
    return out


def default_varphi(u, t1, t2):
    """rho(u/2) rho(2 t1 - 3) rho(2 t2 - 3)."""
    return bump(np.asarray(u, float) / 2.0) * bump(2.0 * np.asarray(t1, float) - 3.0) * bump(
        2.0 * np.asarray(t2, float) - 3.0
    )


def default_test_function(n=4.0, k=10):
    """The default bump varphi at scale N = n and weight k."""
    if n < 1:
        raise ValueError("N must be >= 1")
    if k < 10 or k % 2 != 0:
        raise ValueError("k must be an even integer >= 10")
    return TestFunction(default_varphi, float(n), int(k), 2.0, 1.0, 2.0)


def phi_eval(tf, coords):
    """phi at Iwasawa coordinates (u, r1, r2): varphi(u, N r1, N r2)."""
    if coords.r1 <= 0 or coords.r2 <= 0:
        raise ValueError("Iwasawa coordinates require r1, r2 > 0")
    return float(tf.varphi(coords.u, tf.n * coords.r1, tf.n * coords.r2))


def phi_matrix_entries(tf, m11, m12, m22):
    """phi on symmetric matrices given by entry arrays [[m11,m12],[m12,m22]].

    Evaluates varphi(u, N r1, N r2) at the Iwasawa coordinates
    r2 = m22, u = m12/m22, r1 = m11 - m12^2/m22.  Non-positive-definite
    inputs land outside varphi's support and return 0.
    """
    m11 = np.asarray(m11, float)
    m12 = np.asarray(m12, float)
    m22 = np.asarray(m22, float)
    with np.errstate(divide="ignore", invalid="ignore"):
        u = m12 / m22
        r1 = m11 - m12 * u
    return tf.varphi(u, tf.n * r1, tf.n * m22)


# ============================================================
# tensor-product Gauss-Legendre with panel refinement
# ============================================================

_GL_NODES = 8


def _panel_axis(lo, hi, panels):
    """Nodes and weights for `panels` equal Gauss-Legendre panels on [lo, hi]."""
    base_x, base_w = np.polynomial.legendre.leggauss(_GL_NODES)
    width = (hi - lo) / panels
    starts = lo + width * np.arange(panels)
    x = (starts[:, None] + width * (base_x[None, :] + 1.0) / 2.0).ravel()
    w = np.tile(base_w * width / 2.0, panels)
    return x, w


_CHUNK = 1 << 18  # cap on points materialized per integrand call


def _tensor_eval(f, box, panels):
    axes = [_panel_axis(lo, hi, panels) for lo, hi in box]
    xs = [x for x, _ in axes]
    ws = [w for _, w in axes]
    if len(box) == 1:
        return np.sum(np.asarray(f(xs[0][:, None])) * ws[0])
    tail_grids = np.meshgrid(*xs[1:], indexing="ij")
    tail_pts = np.stack([g.ravel() for g in tail_grids], axis=-1)
    w_tail = ws[1]
    for wi in ws[2:]:
        w_tail = np.multiply.outer(w_tail, wi)
    w_tail = w_tail.ravel()
    rest = len(w_tail)
    step = max(1, _CHUNK // rest)
    total = 0.0
    for start in range(0, len(xs[0]), step):
        x0 = xs[0][start : start + step]
        pts = np.empty((len(x0) * rest, len(box)))
        pts[:, 0] = np.repeat(x0, rest)
        pts[:, 1:] = np.tile(tail_pts, (len(x0), 1))
        w = np.multiply.outer(ws[0][start : start + step], w_tail).ravel()
        total = total + np.sum(np.asarray(f(pts)) * w)
    return total


def adaptive_quad(f, box, tol=1e-9, max_depth=4):
    """Integrate a vectorized integrand over an axis-aligned box.

    f receives an (npts, ndim) array of points and returns values of
    shape (npts,), real or complex.  Panel counts double per axis each
    refinement; convergence is declared when consecutive refinements
    differ by less than tol (absolute).
    """
    region = " x ".join("[%g, %g]" % (lo, hi) for lo, hi in box)
    if any(lo >= hi for lo, hi in box):
        return QuadResult(0.0, 0.0, "empty " + region)
    prev = None
    diff = math.inf
    val = 0.0
    for depth in range(max_depth + 1):
        val = _tensor_eval(f, box, 2**depth)
        if prev is not None:
            diff = abs(val - prev)
            if diff < tol:
                break
        prev = val
    return QuadResult(val, diff, region)
