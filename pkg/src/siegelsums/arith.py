"""Exact 2x2 / 4x4 integer linear algebra and symplectic pair machinery.

Conventions used throughout the package:

  * Mat2Z: a 2x2 integer matrix stored as a flat 4-tuple (c1, c2, c3, c4)
    meaning [[c1, c2], [c3, c4]] (row-major).
  * SymHalf2: an integer triple (a, b, c) encoding the half-integral
    symmetric matrix [[a, b/2], [b/2, c]].  The associated quadratic form
    is (x, y) |-> a x^2 + b x y + c y^2.
  * 4x4 matrices are nested sequences (rows of length 4) of exact ints.
  * J = [[0, I], [-I, 0]] is the standard symplectic form on Z^4.

All integer computations use Python's arbitrary-precision ints; nothing
here ever rounds.  The only floating-point entry points are the Iwasawa
helpers at the bottom.
"""

from math import sqrt
from typing import NamedTuple

import numpy as np


class SnfDecomp(NamedTuple):
    """U*C*V = diag(alphas) with alphas positive, alphas[0] | alphas[1],
    det(V) = +1 and det(U) = +-1."""

    u: tuple
    alphas: tuple
    v: tuple


class IwasawaCoords(NamedTuple):
    """Coordinates (u, r1, r2) of a positive definite Y = R R^t with
    R = [[sqrt(r1), u*sqrt(r2)], [0, sqrt(r2)]]; equivalently
    y1 = r1 + u^2 r2, y2 = u r2, y3 = r2."""

    u: float
    r1: float
    r2: float


# ============================================================
# elementary exact helpers
# ============================================================


def ext_gcd(a, b):
    """Return (g, r, s) with g = gcd(a, b) > 0 and r*a + s*b = g.

    Both arguments zero is a domain error.
    """
    if a == 0 and b == 0:
        raise ValueError("ext_gcd(0, 0) is undefined")
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def mat2_det(c):
    return c[0] * c[3] - c[1] * c[2]


def mat2_mul(a, b):
    return (
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    )


def mat2_transpose(c):
    return (c[0], c[2], c[1], c[3])


def mat2_adj(c):
    """Adjugate: adj(C) * C = det(C) * I."""
    return (c[3], -c[1], -c[2], c[0])


def mat2_neg(c):
    return (-c[0], -c[1], -c[2], -c[3])


def mat2_apply(c, xy):
    """Matrix-vector product C*(x, y)^t."""
    x, y = xy
    return (c[0] * x + c[1] * y, c[2] * x + c[3] * y)


def mat2_is_unimodular(c):
    return mat2_det(c) in (1, -1)


def sym_eval(t, x, y):
    """Quadratic form t1 x^2 + t2 x y + t3 y^2 of the triple t."""
    return t[0] * x * x + t[1] * x * y + t[2] * y * y


def sym_congruence(u, t):
    """Triple of U * T * U^t for a SymHalf2 triple t; exact integers.

    The off-diagonal doubles stay integral because T is half-integral.
    """
    u1, u2, u3, u4 = u
    t1, t2, t3 = t
    a = t1 * u1 * u1 + t2 * u1 * u2 + t3 * u2 * u2
    c = t1 * u3 * u3 + t2 * u3 * u4 + t3 * u4 * u4
    b = 2 * t1 * u1 * u3 + t2 * (u1 * u4 + u2 * u3) + 2 * t3 * u2 * u4
    return (a, b, c)


def sym_det4(t):
    """4*det of the SymHalf2 matrix: 4*t1*t3 - t2^2."""
    return 4 * t[0] * t[2] - t[1] * t[1]


def sym_is_posdef(t):
    return t[0] > 0 and sym_det4(t) > 0


def divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def num_divisors(n):
    return len(divisors(n))


# ============================================================
# Smith normal form (exact, small matrices)
# ============================================================


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _snf(mat):
    """Smith normal form of a small integer matrix (list of lists).

    Returns (P, diag, Q) with P*M*Q diagonal (rectangular diagonal),
    P and Q unimodular, diag the list of diagonal entries (>= 0), each
    dividing the next.  Intended for the tiny matrices used here (at most
    4x4); no attempt at pivoting for coefficient growth.
    """
    m = [list(row) for row in mat]
    rows, cols = len(m), len(m[0])
    p = _identity(rows)
    q = _identity(cols)

    def row_op(i, j, a, b, c, d):
        # rows i, j <- a*row_i + b*row_j, c*row_i + d*row_j  (ad - bc = +-1)
        for mat_ in (m, p):
            ri = mat_[i]
            rj = mat_[j]
            for k in range(len(ri)):
                ri[k], rj[k] = a * ri[k] + b * rj[k], c * ri[k] + d * rj[k]

    def col_op(i, j, a, b, c, d):
        for mat_ in (m, q):
            for row in mat_:
                row[i], row[j] = a * row[i] + b * row[j], c * row[i] + d * row[j]

    for s in range(min(rows, cols)):
        while True:
            # move a nonzero entry of the trailing block to (s, s)
            pivot = None
            for i in range(s, rows):
                for j in range(s, cols):
                    if m[i][j] != 0 and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            i0, j0 = pivot
            if i0 != s:
                row_op(s, i0, 0, 1, 1, 0)
            if j0 != s:
                col_op(s, j0, 0, 1, 1, 0)
            # clear column s below and row s to the right; plain division
            # when the pivot divides (keeps the pivot fixed), full gcd
            # transform otherwise (strictly shrinks the pivot)
            for i in range(s + 1, rows):
                if m[i][s] != 0:
                    if m[i][s] % m[s][s] == 0:
                        row_op(s, i, 1, 0, -(m[i][s] // m[s][s]), 1)
                    else:
                        g, x, y = ext_gcd(m[s][s], m[i][s])
                        a, b = m[s][s] // g, m[i][s] // g
                        row_op(s, i, x, y, -b, a)
            for j in range(s + 1, cols):
                if m[s][j] != 0:
                    if m[s][j] % m[s][s] == 0:
                        col_op(s, j, 1, 0, -(m[s][j] // m[s][s]), 1)
                    else:
                        g, x, y = ext_gcd(m[s][s], m[s][j])
                        a, b = m[s][s] // g, m[s][j] // g
                        col_op(s, j, x, y, -b, a)
            if all(m[i][s] == 0 for i in range(s + 1, rows)) and all(
                m[s][j] == 0 for j in range(s + 1, cols)
            ):
                # enforce divisibility of the remaining block by m[s][s]
                bad = None
                for i in range(s + 1, rows):
                    for j in range(s + 1, cols):
                        if m[i][j] % m[s][s] != 0:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                row_op(s, bad, 1, 1, 0, 1)
    # sign-normalize the diagonal by flipping rows of P (and m)
    for s in range(min(rows, cols)):
        if m[s][s] < 0:
            for k in range(cols):
                m[s][k] = -m[s][k]
            for k in range(rows):
                p[s][k] = -p[s][k]
    diag = [m[s][s] for s in range(min(rows, cols))]
    return p, diag, q


def _mat_det(m):
    """Determinant of a small square integer matrix by expansion."""
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    det = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        det += (-1) ** j * m[0][j] * _mat_det(minor)
    return det


def _mat_inv_unimodular(m):
    """Exact inverse of a unimodular integer matrix (det = +-1)."""
    n = len(m)
    det = _mat_det(m)
    if det not in (1, -1):
        raise ValueError("matrix is not unimodular")
    inv = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:i] + row[i + 1 :] for k, row in enumerate(m) if k != j]
            cof = (-1) ** (i + j) * (_mat_det(minor) if minor else 1)
            inv[i][j] = cof * det
    return inv


def _mat_mul(a, b):
    rows, mid, cols = len(a), len(b), len(b[0])
    return [
        [sum(a[i][k] * b[k][j] for k in range(mid)) for j in range(cols)]
        for i in range(rows)
    ]


def snf2(c):
    """Smith normal form of a nonsingular 2x2 integer matrix.

    Returns SnfDecomp(U, (a1, a2), V) with U*C*V = diag(a1, a2),
    a1 | a2, a1, a2 > 0, det(V) = +1, det(U) = +-1, and
    a1 = gcd of the entries, a1*a2 = |det C|.
    """
    det = mat2_det(c)
    if det == 0:
        raise ValueError("snf2 requires det(C) != 0")
    p, diag, q = _snf([[c[0], c[1]], [c[2], c[3]]])
    u = (p[0][0], p[0][1], p[1][0], p[1][1])
    v = (q[0][0], q[0][1], q[1][0], q[1][1])
    if mat2_det(v) == -1:
        # flip the sign into U: C V' = C V diag(1,-1); compensate by
        # negating the second row of U so the diagonal stays positive.
        v = (v[0], -v[1], v[2], -v[3])
        u = (u[0], u[1], -u[2], -u[3])
    return SnfDecomp(u, (diag[0], diag[1]), v)


# ============================================================
# symplectic 4x4 machinery
# ============================================================

_J4 = ((0, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 0), (0, -1, 0, 0))


def sp4_from_blocks(a, b, c, d):
    """Assemble [[A, B], [C, D]] from four Mat2Z flat tuples."""
    return (
        (a[0], a[1], b[0], b[1]),
        (a[2], a[3], b[2], b[3]),
        (c[0], c[1], d[0], d[1]),
        (c[2], c[3], d[2], d[3]),
    )


def sp4_blocks(g):
    """Inverse of sp4_from_blocks."""
    a = (g[0][0], g[0][1], g[1][0], g[1][1])
    b = (g[0][2], g[0][3], g[1][2], g[1][3])
    c = (g[2][0], g[2][1], g[3][0], g[3][1])
    d = (g[2][2], g[2][3], g[3][2], g[3][3])
    return a, b, c, d


def is_sp4(g):
    """True iff g^t J g = J exactly (g a 4x4 integer matrix)."""
    gt = [[g[i][j] for i in range(4)] for j in range(4)]
    jg = _mat_mul([list(r) for r in _J4], [list(r) for r in g])
    gtjg = _mat_mul(gt, jg)
    return all(gtjg[i][j] == _J4[i][j] for i in range(4) for j in range(4))


def _omega(x, y):
    """Symplectic form x J y^t on row 4-vectors."""
    return x[0] * y[2] + x[1] * y[3] - x[2] * y[0] - x[3] * y[1]


def is_symmetric_pair(c, d):
    """C D^t = D C^t, the bottom-row compatibility condition."""
    return c[0] * d[2] + c[1] * d[3] - c[2] * d[0] - c[3] * d[1] == 0


def complete_pair(c, d):
    """Complete a coprime symmetric pair (C, D) to [[A, B], [C, D]] in Sp4(Z).

    Returns (A, B) as flat tuples, or None when (C, D) is not a coprime
    symmetric pair.  Different completions differ by (A, B) -> (A + SC,
    B + SD) with S integral symmetric.
    """
    if not is_symmetric_pair(c, d):
        return None
    r3 = (c[0], c[1], d[0], d[1])
    r4 = (c[2], c[3], d[2], d[3])
    # columns m_i = J r_i^t; we need rows x with x . m1, x . m2 prescribed
    m = [
        [r3[2], r4[2]],
        [r3[3], r4[3]],
        [-r3[0], -r4[0]],
        [-r3[1], -r4[1]],
    ]
    p, diag, q = _snf(m)
    if len(diag) < 2 or diag[0] != 1 or diag[1] != 1:
        return None  # pair is not coprime
    pinv = _mat_inv_unimodular(p)

    def solve(target):
        # x * M = target  <=>  x = (w1, w2, 0, 0) * P with w = target * Q
        w = [
            target[0] * q[0][0] + target[1] * q[1][0],
            target[0] * q[0][1] + target[1] * q[1][1],
        ]
        return tuple(w[0] * p[0][k] + w[1] * p[1][k] for k in range(4))

    r1 = solve((1, 0))
    r2 = solve((0, 1))
    r2 = tuple(r2[k] - _omega(r1, r2) * r3[k] for k in range(4))
    a = (r1[0], r1[1], r2[0], r2[1])
    b = (r1[2], r1[3], r2[2], r2[3])
    return a, b


def d_translate(c, d, s):
    """D -> D + C*S for a symmetric integer triple s = (s1, s2, s3)."""
    smat = (s[0], s[1], s[1], s[2])
    cs = mat2_mul(c, smat)
    return (d[0] + cs[0], d[1] + cs[1], d[2] + cs[2], d[3] + cs[3])


def d_equivalent(c, d1, d2):
    """Whether D1 = D2 mod C*Lambda', i.e. C^{-1}(D1 - D2) is integral
    symmetric."""
    det = mat2_det(c)
    if det == 0:
        raise ValueError("det(C) = 0")
    diff = (d1[0] - d2[0], d1[1] - d2[1], d1[2] - d2[2], d1[3] - d2[3])
    m = mat2_mul(mat2_adj(c), diff)
    if any(x % det != 0 for x in m):
        return False
    s = tuple(x // det for x in m)
    return s[1] == s[2]


def enumerate_D_classes(c):
    """Representatives of the completable D mod C*Lambda'.

    The D with C D^t = D C^t form a rank-3 lattice L_C inside M_2(Z);
    C*Lambda' (Lambda' = integral symmetric matrices) is a finite-index
    sublattice.  We compute a kernel basis for the linear condition,
    express C*S_1, C*S_2, C*S_3 in that basis, and read the quotient off
    a 3x3 Smith form.  Representatives failing the coprimality test
    (hence not occurring as bottom rows of Sp4(Z)) are dropped.
    """
    det = mat2_det(c)
    if det == 0:
        raise ValueError("enumerate_D_classes requires det(C) != 0")
    c1, c2, c3, c4 = c
    # L_C = kernel of the form (-c3, -c4, c1, c2) on (d1, d2, d3, d4)
    _, _, q = _snf([[-c3, -c4, c1, c2]])
    basis = [[q[i][j] for i in range(4)] for j in (1, 2, 3)]  # rows = basis vecs
    qinv = _mat_inv_unimodular(q)
    # generators of C*Lambda' as d-vectors
    gens = [
        (c1, 0, c3, 0),
        (c2, c1, c4, c3),
        (0, c2, 0, c4),
    ]
    m3 = [[0] * 3 for _ in range(3)]
    for col, gvec in enumerate(gens):
        w = [sum(qinv[i][k] * gvec[k] for k in range(4)) for i in range(4)]
        if w[0] != 0:
            raise AssertionError("generator not in L_C")
        for i in range(3):
            m3[i][col] = w[i + 1]
    p3, diag3, _ = _snf(m3)
    if any(e == 0 for e in diag3):
        raise AssertionError("C*Lambda' does not have finite index in L_C")
    p3inv = _mat_inv_unimodular(p3)
    reps = []
    for k1 in range(diag3[0]):
        for k2 in range(diag3[1]):
            for k3 in range(diag3[2]):
                x = [
                    p3inv[i][0] * k1 + p3inv[i][1] * k2 + p3inv[i][2] * k3
                    for i in range(3)
                ]
                dvec = tuple(
                    x[0] * basis[0][k] + x[1] * basis[1][k] + x[2] * basis[2][k]
                    for k in range(4)
                )
                d = (dvec[0], dvec[1], dvec[2], dvec[3])
                if complete_pair(c, d) is not None:
                    reps.append(d)
    return reps


# ============================================================
# Iwasawa coordinates (floating point)
# ============================================================


def iota(coords):
    """Y = R R^t from IwasawaCoords, as a 2x2 numpy array."""
    u, r1, r2 = coords
    return np.array(
        [[r1 + u * u * r2, u * r2], [u * r2, r2]], dtype=float
    )


def iota_inverse(y):
    """IwasawaCoords of a positive definite symmetric 2x2 matrix.

    Accepts anything np.asarray makes 2x2: r2 = y3, u = y2/y3,
    r1 = y1 - y2^2/y3.
    """
    ymat = np.asarray(y, dtype=float)
    y1, y2, y3 = ymat[0, 0], ymat[0, 1], ymat[1, 1]
    if y3 <= 0 or y1 * y3 - y2 * y2 <= 0:
        raise ValueError("matrix is not positive definite")
    r2 = y3
    u = y2 / y3
    r1 = y1 - y2 * y2 / y3
    return IwasawaCoords(u, r1, r2)


def iwasawa_malpha(g):
    """The GL2+(R)/SO2 part of the Iwasawa decomposition of g in Sp4(R).

    Computes Z = g<iI> = (A iI + B)(C iI + D)^{-1}, takes Y = Im Z, and
    returns the canonical upper-triangular square root R (positive
    diagonal) with R R^t = Y, as a 2x2 numpy array.
    """
    g = np.asarray(g, dtype=float)
    a, b = g[:2, :2], g[:2, 2:]
    c, d = g[2:, :2], g[2:, 2:]
    num = a * 1j + b
    den = c * 1j + d
    if abs(np.linalg.det(den)) < 1e-12 or np.linalg.cond(den) > 1e12:
        raise np.linalg.LinAlgError("ill-conditioned C*iI + D block")
    z = num @ np.linalg.inv(den)
    y = z.imag
    y = (y + y.T) / 2
    u, r1, r2 = iota_inverse(y)
    return np.array([[sqrt(r1), u * sqrt(r2)], [0.0, sqrt(r2)]])


def sp4_m(gamma):
    """m(gamma) = diag(gamma, gamma^{-t}) for gamma in GL2(Z), as nested ints."""
    if not mat2_is_unimodular(gamma):
        raise ValueError("gamma must be unimodular")
    det = mat2_det(gamma)
    # gamma^{-t} = adj(gamma)^t / det
    adjt = mat2_transpose(mat2_adj(gamma))
    invt = tuple(x * det for x in adjt)  # det = +-1
    return sp4_from_blocks(gamma, (0, 0, 0, 0), (0, 0, 0, 0), invt)


def sp4_n(s):
    """n(S) = [[I, S], [0, I]] for a symmetric integer triple s."""
    smat = (s[0], s[1], s[1], s[2])
    return sp4_from_blocks((1, 0, 0, 1), smat, (0, 0, 0, 0), (1, 0, 0, 1))


def canonical_upper(r):
    """Canonicalize g in GL2+(R) to upper triangular with positive diagonal
    (the unique such representative of g*SO2)."""
    r = np.asarray(r, dtype=float)
    y = r @ r.T
    u, r1, r2 = iota_inverse(y)
    return np.array([[sqrt(r1), u * sqrt(r2)], [0.0, sqrt(r2)]])
