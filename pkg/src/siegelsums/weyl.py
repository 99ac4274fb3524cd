"""The order-8 dihedral Weyl group on spectral parameters, and the
symmetric test functions built on it.

Conventions:

  * Spectral parameters are pairs (v1, v2); every group element acts
    linearly, w(v1, v2) = M_w (v1, v2)^t, with M_w an exact 2x2 integer
    matrix stored as a flat 4-tuple (row-major, same as Mat2Z).
  * Element names use ASCII: "sa"/"sb" for the two generating
    reflections, words like "sasb" for their products, "w0" for the long
    element.  The map name -> matrix is an anti-homomorphism (the group
    acts on coordinates), so M_{sasb} = M_sb * M_sa; composition of
    *matrices* is plain matrix multiplication and the set of 8 matrices
    is closed under it.
  * l1(x, y) = x - 2y and l10(x, y) = -2x + 2y are the linear forms
    vanishing on the two origin lines of the polar-line family below.
  * P(v) = prod_w l1(w(v)) l10(w(v)) is a Weyl-invariant homogeneous
    polynomial of degree 16; it factors as
    256 * (v1 * v2 * (v1 - 2 v2) * (v1 - v2))^4,
    so it vanishes to order exactly 4 on each origin line.
  * H00(v) = exp(v1^2 + v2^2); H0(v) = sum_w det(w) H00(w(v)) is the
    alternating symmetrization; H = P * H0 satisfies
    H(w(v)) = det(w) H(v).
  * zeta_completed(s) = pi^(-s/2) Gamma(s/2) zeta(s) for real s > 1.
  * hstar_eval multiplies H by the four completed-zeta factors
    zeta*(v1+1) zeta*(2 v2+1) zeta*(2 v2-v1+1) zeta*(2 v1-2 v2+1) in the
    region where all four arguments exceed 1.  Its magnitude outruns
    binary64 even at modest parameters (exp(v1^2 + v2^2) overflows past
    |v| ~ 26), so it evaluates in decimal arbitrary precision and
    returns a Decimal.

The normalization that would rescale H against the residue of the
underlying spectral family is *not* applied anywhere: the residue is not
computable here.  hstar_normalizer() reports the computable factor of
that constant, namely hstar_eval at the reference point (2, 3/2);
callers wanting the normalized family divide by it (times the residue).
"""

import cmath
import math
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import NamedTuple

from .arith import mat2_apply, mat2_det, mat2_mul


class WeylElement(NamedTuple):
    """A named element with its exact coordinate action and determinant."""

    name: str
    matrix: tuple
    det: int


class PolarLine(NamedTuple):
    """An affine line a*v1 + b*v2 = c with small integer coefficients."""

    label: str
    a: int
    b: int
    c: int


# ============================================================
# the group
# ============================================================

_WEYL_TABLE = (
    ("1", (1, 0, 0, 1)),
    ("sa", (-1, 2, 0, 1)),
    ("sb", (1, 0, 1, -1)),
    ("sasb", (-1, 2, -1, 1)),
    ("sbsa", (1, -2, 1, -1)),
    ("sasbsa", (-1, 0, -1, 1)),
    ("sbsasb", (1, -2, 0, -1)),
    ("w0", (-1, 0, 0, -1)),
)

WEYL_GROUP = tuple(
    WeylElement(name, mat, mat2_det(mat)) for name, mat in _WEYL_TABLE
)

WEYL_BY_NAME = {w.name: w for w in WEYL_GROUP}

_WEYL_BY_MATRIX = {w.matrix: w for w in WEYL_GROUP}


def weyl_act(w, v1, v2):
    """Apply the element's linear action: returns M_w (v1, v2)^t."""
    return mat2_apply(w.matrix, (v1, v2))


def weyl_compose(w1, w2):
    """The named element whose matrix is M_{w1} * M_{w2}."""
    return _WEYL_BY_MATRIX[mat2_mul(w1.matrix, w2.matrix)]


def weyl_table():
    """Rows (name, det, action string) describing each element."""

    def term(c, var):
        if c == 0:
            return ""
        if c == 1:
            return "+" + var
        if c == -1:
            return "-" + var
        return "%+d*%s" % (c, var)

    rows = []
    for w in WEYL_GROUP:
        m = w.matrix
        comps = []
        for a, b in ((m[0], m[1]), (m[2], m[3])):
            s = term(a, "v1") + term(b, "v2")
            comps.append(s.lstrip("+") or "0")
        rows.append((w.name, w.det, "(%s, %s)" % tuple(comps)))
    return rows


# ============================================================
# polar lines
# ============================================================

_LINES = (
    ("L1", 1, -2, 0),
    ("L2", 1, -2, -1),
    ("L3", 1, -2, 1),
    ("L4", 1, 0, 0),
    ("L5", 1, 0, -1),
    ("L6", 1, 0, 1),
    ("L7", 0, 1, 0),
    ("L8", 0, 2, -1),
    ("L9", 0, 2, 1),
    ("L10", -2, 2, 0),
    ("L11", -2, 2, -1),
    ("L12", -2, 2, 1),
)


def polar_lines():
    """The 12 labeled lines where the spectral family has poles."""
    return tuple(PolarLine(*row) for row in _LINES)


def line_contains(line, v1, v2, tol=0.0):
    """Whether a*v1 + b*v2 = c up to tol (exact by default)."""
    return abs(line.a * v1 + line.b * v2 - line.c) <= tol


def origin_lines():
    """The sublist of polar lines passing through the origin."""
    return tuple(line for line in polar_lines() if line.c == 0)


# ============================================================
# P, H00, H0, H
# ============================================================


def ell1(x, y):
    """The linear form vanishing on L1."""
    return x - 2 * y


def ell10(x, y):
    """The linear form vanishing on L10."""
    return -2 * x + 2 * y


def p_eval(v1, v2):
    """prod over the 8 elements of l1(w(v)) * l10(w(v)).

    Arithmetic is generic: exact for int/Fraction input, complex for
    complex input.
    """
    out = 1
    for w in WEYL_GROUP:
        x, y = weyl_act(w, v1, v2)
        out *= ell1(x, y) * ell10(x, y)
    return out


def h00_eval(v1, v2):
    """exp(v1^2 + v2^2)."""
    return cmath.exp(v1 * v1 + v2 * v2)


def h0_eval(v1, v2):
    """Alternating symmetrization sum_w det(w) exp(|w(v)|^2).

    Summed with math.fsum so that the pairwise cancellation forced by a
    det(-1) fixed locus yields an exact 0.
    """
    terms = []
    for w in WEYL_GROUP:
        x, y = weyl_act(w, v1, v2)
        terms.append(w.det * cmath.exp(x * x + y * y))
    return complex(
        math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms)
    )


def h_eval(v1, v2):
    """H = P * H0; satisfies H(w(v)) = det(w) H(v)."""
    return p_eval(v1, v2) * h0_eval(v1, v2)


# ============================================================
# completed zeta on the real axis s > 1
# ============================================================

# B_2, B_4, ..., B_12
_BERNOULLI = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
)

_EM_CUTOFF = 20


def zeta_real(s):
    """zeta(s) for real s > 1 by Euler-Maclaurin off the partial sum.

    With cutoff M = 20 and six Bernoulli correction terms the truncation
    error is far below 1e-12 relative throughout s > 1.
    """
    if s <= 1:
        raise ValueError("zeta_real requires s > 1")
    m = _EM_CUTOFF
    total = math.fsum(n ** -s for n in range(1, m))
    total += 0.5 * m ** -s
    total += m ** (1 - s) / (s - 1)
    rising = s
    power = m ** -(s + 1)
    fact = 2.0
    for j, b in enumerate(_BERNOULLI, start=1):
        total += float(b) / fact * rising * power
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        power /= m * m
        fact *= (2 * j + 1) * (2 * j + 2)
    return total


def zeta_completed(s):
    """zeta*(s) = pi^(-s/2) Gamma(s/2) zeta(s), real s > 1 only."""
    if s <= 1:
        raise ValueError("zeta_completed is only evaluated for s > 1")
    return math.pi ** (-s / 2) * math.gamma(s / 2) * zeta_real(s)


# ============================================================
# H* in the absolute-convergence region
# ============================================================

_HSTAR_PREC = 50


def hstar_args(v1, v2):
    """The four completed-zeta arguments attached to (v1, v2)."""
    return (v1 + 1, 2 * v2 + 1, 2 * v2 - v1 + 1, 2 * v1 - 2 * v2 + 1)


def hstar_eval(v1, v2):
    """H(v) times the four completed-zeta factors, as a Decimal.

    Requires real (v1, v2) with all four arguments of hstar_args > 1.
    The Gaussian factor exp(v1^2 + v2^2) exceeds binary64 range long
    before the parameters get interesting, hence decimal arithmetic.
    """
    args = hstar_args(v1, v2)
    if not all(a > 1 for a in args):
        raise ValueError(
            "hstar_eval requires all four zeta* arguments > 1; got %r" % (args,)
        )
    zfac = 1.0
    for a in args:
        zfac *= zeta_completed(a)
    with localcontext() as ctx:
        ctx.prec = _HSTAR_PREC
        d1, d2 = Decimal(repr(v1)), Decimal(repr(v2))
        p = Decimal(1)
        h0 = Decimal(0)
        for w in WEYL_GROUP:
            x, y = weyl_act(w, d1, d2)
            p *= ell1(x, y) * ell10(x, y)
            h0 += w.det * (x * x + y * y).exp()
        return p * h0 * Decimal(repr(zfac))


def hstar_normalizer():
    """hstar_eval at the reference point (2, 3/2).

    This is the computable factor of the rescaling constant that
    normalizes the family; the remaining factor (a residue of the
    underlying spectral object) is not computable here and is left to
    the caller.
    """
    return hstar_eval(2, 1.5)
