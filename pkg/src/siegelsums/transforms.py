"""Integral transforms of the test function.

Four transforms appear downstream of the unfolded Poincare series:

  * laplace_I: the Laplace transform of phi(Y) det(Y)^(k-3) over
    positive definite symmetric Y, in Iwasawa coordinates
    (u, r1, r2):

        I(M) = int exp(-2 pi (a1 r1 + (a1 u^2 + a2 u + a3) r2))
               varphi(u, N r1, N r2) r1^(k-3) r2^(k-2) du dr1 dr2,

    where M = [[a1, a2/2], [a2/2, a3]] > 0.
  * laplace_I1: the same integral after normalizing changes of
    variables, satisfying I(M) = det(M)^(-k+3/2) I1(M):

        I1(M) = int exp(-2 pi (r1 + r2 + u^2 r2))
                varphi((u sqrt(det M) - a2/2)/a1, N r1/a1,
                       N a1 r2/det M) r1^(k-3) r2^(k-2) du dr1 dr2.

  * weight_W: I1 viewed as a function of the entries (a1, a2, a3); it
    decays like (1 + a1/N)^(-A) (1 + a3/N)^(-A) for every A.
  * rank2_integral / rank1_integral: the oscillatory X-integrals paired
    with the full and corank-1 exponential sums.  Both are truncated to
    the compact region forced by varphi's support; the support
    predicates use a slack factor (default 4) over the exact support
    arithmetic, and a region declared empty returns an exact 0.

All integrals run on the adaptive Gauss-Legendre engine and report a
refinement error estimate.
"""

import math

import numpy as np

from .arith import iota_inverse, mat2_det, sym_congruence, mat2_adj
from .quadrature import QuadResult, adaptive_quad, phi_matrix_entries

DEFAULT_SLACK = 4.0

TWO_PI = 2.0 * math.pi


def _det_half(m):
    """det of [[a1, a2/2], [a2/2, a3]] for a real triple m."""
    return m[0] * m[2] - m[1] * m[1] / 4.0


def _require_posdef(m):
    if m[0] <= 0 or _det_half(m) <= 0:
        raise ValueError("matrix triple %r is not positive definite" % (m,))


# ============================================================
# Laplace transforms
# ============================================================


def laplace_I(m, tf, tol=1e-9, max_depth=4):
    """The Laplace transform I(M) in Iwasawa coordinates.

    The integration box is exactly varphi's support:
    u in [-u_max, u_max], r_i in [t_lo/N, t_hi/N].
    """
    _require_posdef(m)
    a1, a2, a3 = (float(x) for x in m)
    n, k = tf.n, tf.k

    def integrand(pts):
        u, r1, r2 = pts[:, 0], pts[:, 1], pts[:, 2]
        expo = np.exp(-TWO_PI * (a1 * r1 + (a1 * u * u + a2 * u + a3) * r2))
        return (
            expo
            * tf.varphi(u, n * r1, n * r2)
            * r1 ** (k - 3)
            * r2 ** (k - 2)
        )

    box = (
        (-tf.u_max, tf.u_max),
        (tf.t_lo / n, tf.t_hi / n),
        (tf.t_lo / n, tf.t_hi / n),
    )
    return adaptive_quad(integrand, box, tol=tol, max_depth=max_depth)


def laplace_I1(m, tf, tol=1e-9, max_depth=4):
    """The normalized Laplace transform I1(M) = det(M)^(k-3/2) I(M).

    The box is the preimage of varphi's support under the rescaled
    argument slots.
    """
    _require_posdef(m)
    a1, a2, a3 = (float(x) for x in m)
    det = _det_half(m)
    sq = math.sqrt(det)
    n, k = tf.n, tf.k

    def integrand(pts):
        u, r1, r2 = pts[:, 0], pts[:, 1], pts[:, 2]
        expo = np.exp(-TWO_PI * (r1 + r2 + u * u * r2))
        return (
            expo
            * tf.varphi((u * sq - a2 / 2.0) / a1, n * r1 / a1, n * a1 * r2 / det)
            * r1 ** (k - 3)
            * r2 ** (k - 2)
        )

    box = (
        ((-tf.u_max * a1 + a2 / 2.0) / sq, (tf.u_max * a1 + a2 / 2.0) / sq),
        (tf.t_lo * a1 / n, tf.t_hi * a1 / n),
        (tf.t_lo * det / (n * a1), tf.t_hi * det / (n * a1)),
    )
    return adaptive_quad(integrand, box, tol=tol, max_depth=max_depth)


def weight_W(a1, a2, a3, tf, tol=1e-9, max_depth=4):
    """The weight function W(a1, a2, a3) = I1(M) as a function of entries."""
    return laplace_I1((a1, a2, a3), tf, tol=tol, max_depth=max_depth)


# ============================================================
# rank-2 oscillatory integral
# ============================================================


def _ymat(y):
    ymat = np.asarray(y, dtype=float)
    if ymat.shape != (2, 2):
        raise ValueError("Y must be a 2x2 matrix")
    return ymat


def rank2_support_norm(c, y):
    """The sup norm of C Y C^t used by the rank-2 support predicate."""
    cm = np.array([[c[0], c[1]], [c[2], c[3]]], dtype=float)
    return float(np.max(np.abs(cm @ _ymat(y) @ cm.T)))


def rank2_is_supported(c, y, tf, slack=DEFAULT_SLACK):
    """Whether C survives the ||C Y C^t||_inf cutoff (slack * N * t_hi)."""
    return rank2_support_norm(c, y) <= slack * tf.n * tf.t_hi


def rank2_integral(
    q, t, y, c, tf, tol=1e-9, max_depth=4, slack=DEFAULT_SLACK, box_scale=1.0
):
    """The oscillatory integral paired with K(Q, T; C):

        int_{R^3} e(Tr[Q C^{-t} Re(-Z^{-1}) C^{-1} - T X])
                  phi(C^{-t} Im(-Z^{-1}) C^{-1}) dX,   Z = X + iY.

    Computed after X = R X' R^t (Jacobian (r1 r2)^(3/2)) and a singular
    value decomposition C R = U D V; the X''-box is forced by varphi's
    support.  Returns exact 0 when the support predicate fails.
    """
    if mat2_det(c) == 0:
        raise ValueError("rank-2 integral requires det(C) != 0")
    ymat = _ymat(y)
    if not rank2_is_supported(c, ymat, tf, slack=slack):
        return QuadResult(0.0, 0.0, "empty (support predicate)")

    coords = iota_inverse(ymat)
    u0, r1, r2 = coords.u, coords.r1, coords.r2
    rmat = np.array([[math.sqrt(r1), u0 * math.sqrt(r2)], [0.0, math.sqrt(r2)]])
    cm = np.array([[c[0], c[1]], [c[2], c[3]]], dtype=float)
    umat, svals, vh = np.linalg.svd(cm @ rmat)
    s1, s2 = float(svals[0]), float(svals[1])

    qmat = np.array([[q[0], q[1] / 2.0], [q[1] / 2.0, q[2]]])
    tmat = np.array([[t[0], t[1] / 2.0], [t[1] / 2.0, t[2]]])
    e = umat @ np.diag([1.0 / s1, 1.0 / s2])
    hm = e.T @ qmat @ e  # phase matrix for the Q-part
    gm = vh @ (rmat.T @ tmat @ rmat) @ vh.T  # linear T-phase matrix
    e11, e12, e21, e22 = e[0, 0], e[0, 1], e[1, 0], e[1, 1]
    h11, h12, h22 = hm[0, 0], hm[0, 1], hm[1, 1]
    g11, g12, g22 = gm[0, 0], gm[0, 1], gm[1, 1]
    jac = (r1 * r2) ** 1.5

    def integrand(pts):
        x11, x12, x22 = pts[:, 0], pts[:, 1], pts[:, 2]
        # X^2 and S = (X^2 + I)^{-1}
        b11 = x11 * x11 + x12 * x12 + 1.0
        b12 = x12 * (x11 + x22)
        b22 = x12 * x12 + x22 * x22 + 1.0
        detb = b11 * b22 - b12 * b12
        s11, s12, s22 = b22 / detb, -b12 / detb, b11 / detb
        # W = X S (symmetric since X and S commute)
        w11 = x11 * s11 + x12 * s12
        w12 = x11 * s12 + x12 * s22
        w22 = x12 * s12 + x22 * s22
        phase = -(h11 * w11 + 2.0 * h12 * w12 + h22 * w22) - (
            g11 * x11 + 2.0 * g12 * x12 + g22 * x22
        )
        # phi argument E S E^t
        mp11 = e11 * e11 * s11 + 2.0 * e11 * e12 * s12 + e12 * e12 * s22
        mp12 = e11 * e21 * s11 + (e11 * e22 + e12 * e21) * s12 + e12 * e22 * s22
        mp22 = e21 * e21 * s11 + 2.0 * e21 * e22 * s12 + e22 * e22 * s22
        return np.exp(2j * math.pi * phase) * phi_matrix_entries(
            tf, mp11, mp12, mp22
        )

    # On varphi's support the phi argument A = E S E^t has
    # lambda_min(A) >= det(A)/tr(A) >= (t_lo/N)^2 / ((t_hi/N)(2 + u_max^2)),
    # so the diagonal of A^{-1} = U D (X''^2 + I) D U^t gives
    # s_i^2 (1 + (X''^2)_ii) <= tau; the box below therefore contains the
    # whole support exactly (no slack needed).
    tau = tf.n * tf.t_hi * (2.0 + tf.u_max**2) / tf.t_lo**2
    cap1 = box_scale * math.sqrt(tau) / s1
    cap2 = box_scale * math.sqrt(tau) / s2
    box = (
        (-cap1, cap1),
        (-min(cap1, cap2), min(cap1, cap2)),
        (-cap2, cap2),
    )
    res = adaptive_quad(integrand, box, tol=tol, max_depth=max_depth)
    return QuadResult(res.value * jac, res.abs_error_estimate * jac, res.region)


# ============================================================
# rank-1 oscillatory integral
# ============================================================


def rank1_c_cap(y, slack=DEFAULT_SLACK):
    """Moduli c beyond slack * det(Y)^(-1/2) contribute nothing."""
    return slack / math.sqrt(float(np.linalg.det(_ymat(y))))


def rank1_row_cap(y, slack=DEFAULT_SLACK):
    """Bottom rows with u3^2 + u4^2 beyond slack * 4 * det(Y)^(-1/2)
    contribute nothing (4 = u_max^2 of the default support box)."""
    return 4.0 * slack / math.sqrt(float(np.linalg.det(_ymat(y))))


def rank1_col_cap(y, tf, slack=DEFAULT_SLACK):
    """Columns with |v1 v3| beyond slack * N sqrt(y1 y3 / det Y)
    contribute nothing."""
    ymat = _ymat(y)
    dety = float(np.linalg.det(ymat))
    return slack * tf.n * math.sqrt(ymat[0, 0] * ymat[1, 1] / dety)


def _trace_quad_coeffs(u, f_im, x1):
    """Coefficients (A, B, C) of x2 -> tr(U^t Im U) at fixed x1."""
    t_m1, t_0, t_1 = (f_im(x1, x2) for x2 in (-1.0, 0.0, 1.0))
    a = (t_1 + t_m1) / 2.0 - t_0
    b = (t_1 - t_m1) / 2.0
    return a, b, t_0


def rank1_integral(
    q,
    t,
    y,
    c,
    u,
    v,
    sign,
    tf,
    tol=1e-9,
    max_depth=7,
    slack=DEFAULT_SLACK,
    box_scale=1.0,
):
    """The corank-1 oscillatory integral

        int_{R^2} e(-g1 x1 - g2 x2) e(Tr[U Q U^t Re M2])
                  phi(U^t Im(M2 + [[0,0],[0, i y3']]) U) dx1 dx2,

    where z1' = x1 + i y1', z2' = x2 + i y2' with Y' = V^t Y V, and

        M2 = [[-1/(c^2 z1'), sign z2'/(c z1')],
              [sign z2'/(c z1'), -z2'^2/z1']].

    Truncated to the support-forced box: |x1| is capped by the
    determinant window, and the x2 interval is the hull (padded 20%)
    over sampled x1 of the exact quadratic-in-x2 trace condition.
    Returns exact 0 when a support predicate or the box is empty.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if c < 1:
        raise ValueError("c must be a positive integer")
    if abs(mat2_det(u)) != 1 or abs(mat2_det(v)) != 1:
        raise ValueError("U and V must be unimodular")
    ymat = _ymat(y)
    dety = float(np.linalg.det(ymat))

    if c > rank1_c_cap(ymat, slack=slack):
        return QuadResult(0.0, 0.0, "empty (c cap)")
    if u[2] * u[2] + u[3] * u[3] > rank1_row_cap(ymat, slack=slack):
        return QuadResult(0.0, 0.0, "empty (row cap)")
    if abs(v[0] * v[2]) > rank1_col_cap(ymat, tf, slack=slack):
        return QuadResult(0.0, 0.0, "empty (column cap)")

    f = sym_congruence(u, q)  # U Q U^t
    g = sym_congruence(mat2_adj(v), t)  # V^{-1} T V^{-t}
    vm = np.array([[v[0], v[1]], [v[2], v[3]]], dtype=float)
    yp = vm.T @ ymat @ vm
    y1p, y2p, y3p = yp[0, 0], yp[0, 1], yp[1, 1]
    n = tf.n

    x1sq = n * n * dety / (c * c) - y1p * y1p
    if x1sq <= 0:
        return QuadResult(0.0, 0.0, "empty (x1 window)")
    x1_half = box_scale * math.sqrt(x1sq)

    u1, u2, u3, u4 = u
    col1 = (u1 * u1, 2.0 * u1 * u3, u3 * u3)
    col2 = (u2 * u2, 2.0 * u2 * u4, u4 * u4)

    def im_entries(x1, x2):
        z1 = x1 + 1j * y1p
        z2 = x2 + 1j * y2p
        m11 = -1.0 / (c * c * z1)
        m12 = sign * z2 / (c * z1)
        m22 = -z2 * z2 / z1
        return m11, m12, m22

    def arg_trace(x1, x2):
        m11, m12, m22 = im_entries(x1, x2)
        i11, i12, i22 = m11.imag, m12.imag, m22.imag + y3p
        return (
            col1[0] * i11 + col1[1] * i12 + col1[2] * i22
            + col2[0] * i11 + col2[1] * i12 + col2[2] * i22
        )

    # varphi's support forces tr <= (t_hi + (u_max^2 + 1) t_hi)/N exactly
    tr_max = tf.t_hi * (2.0 + tf.u_max**2) / n
    lo = math.inf
    hi = -math.inf
    for x1 in np.linspace(-x1_half, x1_half, 17):
        a, b, c0 = _trace_quad_coeffs(u, arg_trace, float(x1))
        if a <= 0:
            continue
        disc = b * b - 4.0 * a * (c0 - tr_max)
        if disc <= 0:
            continue
        root = math.sqrt(disc)
        lo = min(lo, (-b - root) / (2.0 * a))
        hi = max(hi, (-b + root) / (2.0 * a))
    if not lo < hi:
        return QuadResult(0.0, 0.0, "empty (x2 window)")
    mid = (lo + hi) / 2.0
    half = box_scale * (0.7 * (hi - lo))  # 20% pad on each side
    lo, hi = mid - half, mid + half

    def integrand(pts):
        x1, x2 = pts[:, 0], pts[:, 1]
        z1 = x1 + 1j * y1p
        z2 = x2 + 1j * y2p
        m11 = -1.0 / (c * c * z1)
        m12 = sign * z2 / (c * z1)
        m22 = -z2 * z2 / z1
        i11, i12, i22 = m11.imag, m12.imag, m22.imag + y3p
        a11 = col1[0] * i11 + col1[1] * i12 + col1[2] * i22
        a22 = col2[0] * i11 + col2[1] * i12 + col2[2] * i22
        a12 = (
            u1 * u2 * i11 + (u1 * u4 + u2 * u3) * i12 + u3 * u4 * i22
        )
        phival = phi_matrix_entries(tf, a11, a12, a22)
        phase = (
            f[0] * m11.real + f[1] * m12.real + f[2] * m22.real
            - g[0] * x1 - g[1] * x2
        )
        return np.exp(2j * math.pi * phase) * phival

    box = ((-x1_half, x1_half), (lo, hi))
    return adaptive_quad(integrand, box, tol=tol, max_depth=max_depth)
