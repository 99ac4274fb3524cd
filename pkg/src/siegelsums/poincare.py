"""Fourier coefficients of the degree-2 Poincare series, assembled by rank.

The coefficient a_Q(T, Y) = int_{X in [0,1]^3} P_Q(X + iY) e(-Tr T X) dX
splits into three pieces according to the rank of the lower-left block C
of the group element generating each term:

    a_Q = a0 + a1 + a2,

    a0 = sum_{U in GL2(Z), U^t Q U = T}  varphi-of iota^-1(U Y U^t),

    a1 = sum_{+-} sum_{c >= 1} sum_{rows (u3,u4)} sum_{cols (v1,v3)}
             delta(f3 = g3) K1(Q, T, c, U, V) I1(Q, T, Y, c, U, V),

    a2 = sum_{det C != 0} K(Q, T; C) I(Q, T, Y, C).

Here K and K1 are the exponential sums of `expsums` and I, I1 the
oscillatory integrals of `transforms`.  The rank-1 sum runs over one
unimodular completion U of each primitive bottom row (u3, u4) taken up
to overall sign, and one completion V of each primitive left column
(v1, v3) with both signs counted; with f = U Q U^t and
g = V^-1 T V^-t, only pairs with f3 = g3 contribute.  Each summand of
the combined +- sum is independent of the completion choices:
translating a completion by an upper-triangular unipotent rotates K1
and I1 by conjugate c-th roots of unity (the product is fixed), and
flipping its determinant swaps the two +- branches (f2 -> -f2 resp.
g2 -> -g2) while fixing each factor; pass debug=True to re-derive both
facts numerically term by term.

Every sum is finite once Y, the test function, and the cutoff are
fixed: the rank-0 matrices U and the rank-1 data (c, rows, columns) are
capped by the support of varphi (with the shared slack factor), and the
rank-2 sum scans nonsingular C up to the requested sup-norm cutoff,
discarding C with ||C Y C^t|| beyond the support of the integrand.
Raising the cutoff past the support-forced cap therefore changes
nothing.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .arith import ext_gcd, sym_congruence, sym_det4, sym_eval
from .expsums import rank1_charsum, symplectic_kloosterman, iter_nonsingular_C
from .quadrature import QuadResult, TestFunction, phi_matrix_entries
from .transforms import (
    DEFAULT_SLACK,
    rank1_c_cap,
    rank1_col_cap,
    rank1_integral,
    rank1_row_cap,
    rank2_integral,
    rank2_is_supported,
)

# Exponential sums are sums of phase_count roots of unity evaluated in
# floating point; exact cancellations come out as roundoff at most a few
# ulps per summand, while genuinely nonzero sums (algebraic integers in a
# small cyclotomic field) stay far above this line for the moduli in play.
_CHARSUM_REL_EPS = 1e-12


class FourierCoeffRequest(NamedTuple):
    """One Fourier-coefficient evaluation: a_Q(T, Y) data plus a cutoff.

    q, t: symmetric half-integral triples (a, b, c) <-> [[a, b/2], [b/2, c]];
    y: positive-definite 2x2 imaginary part; tf: the test-function bundle;
    cutoff: sup-norm cap for the rank-2 C sum and modulus cap for the
    rank-1 c sum (the support caps apply on top of it).
    """

    q: tuple
    t: tuple
    y: object
    tf: TestFunction
    cutoff: float


def _ymat(y):
    ymat = np.asarray(y, dtype=float)
    if ymat.shape != (2, 2):
        raise ValueError("Y must be a 2x2 matrix")
    if abs(ymat[0, 1] - ymat[1, 0]) > 1e-12:
        raise ValueError("Y must be symmetric")
    if ymat[0, 0] <= 0 or np.linalg.det(ymat) <= 0:
        raise ValueError("Y must be positive definite")
    return ymat


def _validated(req):
    q = tuple(int(x) for x in req.q)
    t = tuple(int(x) for x in req.t)
    if len(q) != 3 or len(t) != 3:
        raise ValueError("Q and T must be integer triples")
    if not isinstance(req.tf, TestFunction):
        raise ValueError("tf must be a TestFunction")
    cutoff = float(req.cutoff)
    if cutoff <= 0:
        raise ValueError("cutoff must be positive")
    return q, t, _ymat(req.y), req.tf, cutoff


# ============================================================
# rank 0
# ============================================================


def rank0_row_caps(y, tf, slack=DEFAULT_SLACK):
    """Squared-norm caps (top row, bottom row) for U in the rank-0 sum.

    On the support of varphi the matrix M = U Y U^t has
    M22 = r2 <= t_hi/N and M11 = r1 + u^2 r2 <= (1 + u_max^2) t_hi/N,
    while M11 >= lambda_min(Y) |row1|^2 and likewise for M22; rows
    violating these bounds (inflated by slack^2) cannot contribute.
    """
    lam = float(np.linalg.eigvalsh(_ymat(y))[0])
    base = tf.t_hi / (tf.n * lam)
    return (
        slack * slack * (1.0 + tf.u_max * tf.u_max) * base,
        slack * slack * base,
    )


def _rows_in_disc(capsq):
    rmax = int(math.isqrt(int(capsq))) + 1
    out = []
    for a in range(-rmax, rmax + 1):
        for b in range(-rmax, rmax + 1):
            if (a, b) != (0, 0) and a * a + b * b <= capsq:
                out.append((a, b))
    return out


def a0(req, slack=DEFAULT_SLACK):
    """Exact rank-0 coefficient: sum of varphi over {U : U^t Q U = T}."""
    q, t, ymat, tf, _cutoff = _validated(req)
    if sym_det4(q) != sym_det4(t):
        return 0.0
    cap1sq, cap2sq = rank0_row_caps(ymat, tf, slack=slack)
    rows1 = _rows_in_disc(cap1sq)
    rows2 = _rows_in_disc(cap2sq)
    total = 0.0
    for u3, u4 in rows2:
        for u1, u2 in rows1:
            if u1 * u4 - u2 * u3 not in (1, -1):
                continue
            if sym_congruence((u1, u3, u2, u4), q) != t:
                continue
            row1 = np.array([u1, u2], dtype=float)
            row2 = np.array([u3, u4], dtype=float)
            m11 = float(row1 @ ymat @ row1)
            m12 = float(row1 @ ymat @ row2)
            m22 = float(row2 @ ymat @ row2)
            total += float(phi_matrix_entries(tf, m11, m12, m22))
    return total


# ============================================================
# rank 2
# ============================================================


def a2_truncated(req, tol=1e-9, max_depth=4, slack=DEFAULT_SLACK):
    """Rank-2 coefficient truncated to ||C||_inf <= cutoff.

    Sums K(Q, T; C) * I(Q, T, Y, C) over nonsingular C inside the cutoff
    that pass the ||C Y C^t|| support test, skipping C whose exponential
    sum cancels exactly.  The region string reports the counts.
    """
    q, t, ymat, tf, cutoff = _validated(req)
    if q == (0, 0, 0) and t == (0, 0, 0):
        raise ValueError("rank-2 sum requires Q != 0 or T != 0")
    cmax = int(math.floor(cutoff))
    value = 0j
    err = 0.0
    scanned = supported = contributing = 0
    for c in iter_nonsingular_C(cmax):
        scanned += 1
        if not rank2_is_supported(c, ymat, tf, slack=slack):
            continue
        supported += 1
        kv = symplectic_kloosterman(q, t, c)
        if abs(kv.value) <= _CHARSUM_REL_EPS * kv.phase_count:
            continue
        res = rank2_integral(
            q, t, ymat, c, tf, tol=tol, max_depth=max_depth, slack=slack
        )
        value += kv.value * res.value
        err += abs(kv.value) * res.abs_error_estimate
        contributing += 1
    region = (
        f"rank-2 C sum: {contributing} contributing / {supported} supported"
        f" / {scanned} nonsingular C with sup norm <= {cmax}"
    )
    return QuadResult(value, err, region)


# ============================================================
# rank 1
# ============================================================


def primitive_rows(capsq):
    """Primitive (u3, u4) with u3^2 + u4^2 <= capsq, one per +- class."""
    rmax = int(math.isqrt(max(int(capsq), 0))) + 1
    out = []
    for u3 in range(0, rmax + 1):
        lo = 0 if u3 > 0 else 1  # (0, u4): keep u4 > 0 only
        for u4 in range(-rmax, rmax + 1):
            if u3 == 0 and u4 < lo:
                continue
            if u3 * u3 + u4 * u4 > capsq:
                continue
            if (u3, u4) == (0, 0) or math.gcd(u3, u4) != 1:
                continue
            out.append((u3, u4))
    return sorted(out)


def primitive_cols(cap):
    """Primitive (v1, v3) with |v1 v3| <= cap, both signs distinct."""
    vmax = max(int(math.floor(cap)), 1)
    out = []
    for v1 in range(-vmax, vmax + 1):
        for v3 in range(-vmax, vmax + 1):
            if (v1, v3) == (0, 0) or abs(v1 * v3) > cap:
                continue
            if math.gcd(v1, v3) != 1:
                continue
            out.append((v1, v3))
    return sorted(out)


def complete_row(u3, u4):
    """A det +1 matrix [[a, b], [u3, u4]] over the given primitive row."""
    g, x, y = ext_gcd(u3, u4)
    if g != 1:
        raise ValueError("row must be primitive")
    # det = y u4 - (-x) u3 = x u3 + y u4 = 1
    return (y, -x, u3, u4)


def complete_col(v1, v3):
    """A det +1 matrix [[v1, b], [v3, d]] over the given primitive column."""
    g, x, y = ext_gcd(v1, v3)
    if g != 1:
        raise ValueError("column must be primitive")
    # det = v1 x - (-y) v3 = x v1 + y v3 = 1
    return (v1, -y, v3, x)


def _shift_row_completion(u, n=1):
    """Left-multiply by [[1, n], [0, 1]]: top row += n * bottom row."""
    return (u[0] + n * u[2], u[1] + n * u[3], u[2], u[3])


def _shift_col_completion(v, n=1):
    """Right-multiply by [[1, n], [0, 1]]: second column += n * first."""
    return (v[0], v[1] + n * v[0], v[2], v[3] + n * v[2])


def _flip_row_det(u):
    """Determinant-flipped completion over the same bottom row."""
    return (-u[0], -u[1], u[2], u[3])


def _flip_col_det(v):
    """Determinant-flipped completion over the same left column."""
    return (v[0], -v[1], v[2], -v[3])


def _assert_close(lhs, rhs, tol, what):
    if abs(lhs - rhs) > tol:
        raise AssertionError(f"{what}: {lhs} vs {rhs} (tol {tol})")


def _debug_check_term(q, t, ymat, c, u, v, sign, tf, kv, res, tol, max_depth, slack):
    """Re-derive the completion independence of one rank-1 summand.

    Shifting a completion by an upper-triangular unipotent rotates K1 and
    I1 by conjugate c-th roots of unity, so only the product K1 * I1 is
    invariant; a determinant flip swaps the two +- branches and fixes
    K1 and I1 separately (exact phase identities).
    """
    term = kv.value * res.value
    kmag = abs(kv.value)
    char_tol = _CHARSUM_REL_EPS * max(kv.phase_count, 1) * 10 + 1e-9
    for u2, v2, label in (
        (_shift_row_completion(u), v, "row completion shift"),
        (u, _shift_col_completion(v), "column completion shift"),
    ):
        kv2 = rank1_charsum(q, t, c, u2, v2, sign)
        _assert_close(abs(kv2.value), kmag, char_tol, f"|K1| under {label}")
        res2 = rank1_integral(
            q, t, ymat, c, u2, v2, sign, tf,
            tol=tol, max_depth=max_depth, slack=slack,
        )
        _assert_close(
            kv2.value * res2.value, term,
            kmag * (res.abs_error_estimate + res2.abs_error_estimate)
            + 1e-9 * (1.0 + abs(term)),
            f"K1 * I1 under {label}",
        )
    for u2, v2, label in (
        (_flip_row_det(u), v, "row det flip"),
        (u, _flip_col_det(v), "column det flip"),
    ):
        kv2 = rank1_charsum(q, t, c, u2, v2, -sign)
        _assert_close(kv2.value, kv.value, char_tol, f"K1 under {label}")
        res2 = rank1_integral(
            q, t, ymat, c, u2, v2, -sign, tf,
            tol=tol, max_depth=max_depth, slack=slack,
        )
        _assert_close(
            res2.value, res.value,
            res.abs_error_estimate + res2.abs_error_estimate
            + 1e-9 * (1.0 + abs(res.value)),
            f"I1 under {label}",
        )


def a1_truncated(req, tol=1e-9, max_depth=7, slack=DEFAULT_SLACK, debug=False):
    """Rank-1 coefficient truncated to moduli c <= cutoff.

    Sums delta(f3 = g3) * K1 * I1 over both signs, moduli c up to
    min(cutoff, support cap), and the capped row/column classes.  With
    debug=True every contributing summand is re-derived under shifted
    and determinant-flipped completions.
    """
    q, t, ymat, tf, cutoff = _validated(req)
    cmax = int(math.floor(min(cutoff, rank1_c_cap(ymat, slack=slack))))
    if cmax < 1:
        return QuadResult(0j, 0.0, "rank-1 sum: empty (c cap)")
    rows = primitive_rows(rank1_row_cap(ymat, slack=slack))
    cols = primitive_cols(rank1_col_cap(ymat, tf, slack=slack))
    value = 0j
    err = 0.0
    terms = 0
    admissible = 0
    for u3, u4 in rows:
        f3 = sym_eval(q, u3, u4)
        u = complete_row(u3, u4)
        for v1, v3 in cols:
            # g3 = lower-right entry of V^-1 T V^-t = T[adj(V) bottom row]
            if f3 != sym_eval(t, -v3, v1):
                continue
            v = complete_col(v1, v3)
            for c in range(1, cmax + 1):
                for sign in (1, -1):
                    admissible += 1
                    kv = rank1_charsum(q, t, c, u, v, sign)
                    if abs(kv.value) <= _CHARSUM_REL_EPS * kv.phase_count:
                        continue
                    res = rank1_integral(
                        q, t, ymat, c, u, v, sign, tf,
                        tol=tol, max_depth=max_depth, slack=slack,
                    )
                    if debug:
                        _debug_check_term(
                            q, t, ymat, c, u, v, sign, tf, kv, res,
                            tol, max_depth, slack,
                        )
                    if res.region.startswith("empty"):
                        continue
                    value += kv.value * res.value
                    err += abs(kv.value) * res.abs_error_estimate
                    terms += 1
    region = (
        f"rank-1 sum: {terms} terms / {admissible} admissible"
        f" (c <= {cmax}, {len(rows)} rows, {len(cols)} columns)"
    )
    return QuadResult(value, err, region)
