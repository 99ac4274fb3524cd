"""Classical weight-12 counterpart of the Siegel machinery.

Conventions.  f is fixed to the discriminant form Delta of weight k = 12,
    Delta(z) = q prod_{j>=1} (1 - q^j)^24 = sum_{n>=1} tau(n) q^n,
so lambda_f(n) n^{(k-1)/2} = tau(n) exactly.  e(x) = exp(2 pi i x) and
S(m, n; c) is the classical Kloosterman sum.

The divisor-pair delta identity reads

    delta(n=0) = 2 sum_{1 <= d | n} (omega(d) - omega(n/d))

for a smooth even compactly supported omega with omega(0) = 0 and
sum_{n in Z} omega(n) = 1 (for n = 0 the sum runs over all d >= 1).
Detecting d | n with additive characters and substituting d = ck turns
this into the Kloosterman-side form

    delta(n=0) = sum_{c>=1} S(n,0;c)/c sum_{k>=1} (2/k)
                 (omega(ck) - omega(n/(ck))),

a finite identity once the caps exceed omega's support.

The Poincare series P_q(z, psi) = sum_{Gamma_inf \\ Gamma} e(q Re gz)
psi(Im gz) has Fourier coefficients a_q(r, y, psi); the module computes
them two independent ways:

    aq_kloosterman:  psi(y) delta_{q=r}
                     + y sum_{c>=1} S(r,q;c) int e(-rxy - qx/(c^2 y (x^2+1)))
                       psi(1/(c^2 y (x^2+1))) dx,
    aq_direct:       int_0^1 e(-rx) sum_{(c,d)=1} e(q Re gz) psi(Im gz) dx

with the coset sum over one representative per translation class.  The
support of psi on [1/N, 2/N] truncates both c-sums at c <= sqrt(N/y).

Finally, shifted_sum_demo assembles the shifted convolution sum

    I = sum_{m+q=n} tau(m) tau(n) int_0^inf y^{k-1} exp(-2 pi (m+n) y)
        psi(y) dy/y,

whose size is governed by the N^{3/4} bound that the a_q estimate yields.
"""

import math
from typing import Callable, NamedTuple

import numpy as np

from .arith import divisors, ext_gcd
from .expsums import classical_kloosterman
from .quadrature import QuadResult, adaptive_quad, bump

TAU_WEIGHT = 12

_TWO_PI = 2.0 * math.pi


# ============================================================
# test-function bundles
# ============================================================


class OmegaSpec(NamedTuple):
    """Smooth even omega with omega(0) = 0 and sum_{n in Z} omega(n) = 1.

    omega vanishes outside inner <= |x| <= support; the two radii drive
    the exact truncation ranges of the delta identities.
    """

    omega: Callable
    inner: float
    support: float


class PsiSpec(NamedTuple):
    """Smooth psi supported exactly on [1/n, 2/n]."""

    psi: Callable
    n: float


def default_omega():
    """Even bump on +-[1/2, 5/2] rescaled so that sum_{n in Z} omega(n) = 1.

    The only nonzero integer samples are +-1 and +-2, so the rescaling is
    exact: omega(1) + omega(2) = 1/2.
    """
    base = lambda x: bump(np.abs(np.asarray(x, dtype=float)) - 1.5)
    norm = 2.0 * float(base(1.0) + base(2.0))
    return OmegaSpec(lambda x: base(x) / norm, 0.5, 2.5)


def default_psi(n):
    """bump(2 n v - 3): supported exactly on [1/n, 2/n]."""
    n = float(n)
    if n < 1:
        raise ValueError("scale must satisfy N >= 1")
    return PsiSpec(lambda v: bump(2.0 * n * np.asarray(v, dtype=float) - 3.0), n)


def _check_y(y):
    y = float(y)
    if not 0.25 <= y <= 4.0:
        raise ValueError("y must lie in [1/4, 4] (the y ~ 1 regime)")
    return y


# ============================================================
# delta identities
# ============================================================


def delta_divisor(n, omega):
    """2 sum_{1 <= d | n} (omega(d) - omega(n/d)); for n = 0 the sum

    runs over all d >= 1 (finite by omega's support) and evaluates to 1.
    """
    om = omega.omega
    n = int(n)
    if n == 0:
        dmax = int(math.floor(omega.support))
        return 2.0 * float(sum(float(om(float(d))) for d in range(1, dmax + 1)))
    total = 0.0
    for d in divisors(n):
        total += float(om(float(d))) - float(om(abs(n) / d))
    return 2.0 * total


class DeltaKloosterman(NamedTuple):
    value: float
    truncation_exact: bool
    caps_needed: int


def delta_kloosterman(n, omega, c_max, k_max):
    """Truncated Kloosterman-side delta:

        sum_{c <= c_max} S(n,0;c)/c sum_{k <= k_max} (2/k)
        (omega(ck) - omega(n/(ck))).

    A product ck contributes only if ck <= support or
    |n|/support <= ck <= |n|/inner, so caps at
    max(floor(support), floor(|n|/inner)) make the truncation exact;
    the report says whether the requested caps reach that.
    """
    n = int(n)
    c_max, k_max = int(c_max), int(k_max)
    if c_max < 1 or k_max < 1:
        raise ValueError("caps must be at least 1")
    om = omega.omega
    live = int(math.floor(omega.support))
    if n != 0:
        live = max(live, int(math.floor(abs(n) / omega.inner)))
    exact = c_max >= live and k_max >= live
    total = 0.0
    for c in range(1, min(c_max, live) + 1):
        inner_sum = 0.0
        for k in range(1, min(k_max, live // c) + 1):
            ck = c * k
            inner_sum += (2.0 / k) * (
                float(om(float(ck))) - float(om(n / ck))
            )
        if inner_sum == 0.0:
            continue
        s = classical_kloosterman(n, 0, c).value.real
        total += s / c * inner_sum
    return DeltaKloosterman(total, exact, live)


# ============================================================
# Ramanujan tau
# ============================================================


def _pentagonal_exponents(order):
    """(exponent, sign) pairs of Euler's product sum_{k} (-1)^k
    q^{k(3k-1)/2} up to the given order."""
    out = []
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > order:
            break
        sign = -1 if k % 2 else 1
        out.append((g1, sign))
        if g2 <= order:
            out.append((g2, sign))
        k += 1
    return out


def tau_coeffs(n_max):
    """tau(1..n_max) as exact integers via q prod (1 - q^j)^24.

    prod (1 - q^j) is applied 24 times as a sparse pentagonal-number
    shift-and-add, keeping exact Python integers throughout.
    """
    n_max = int(n_max)
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    order = n_max - 1
    pent = _pentagonal_exponents(order)
    coeffs = [1] + [0] * order
    for _ in range(24):
        nxt = coeffs[:]
        for g, sign in pent:
            if sign > 0:
                for i in range(g, order + 1):
                    nxt[i] += coeffs[i - g]
            else:
                for i in range(g, order + 1):
                    nxt[i] -= coeffs[i - g]
        coeffs = nxt
    return coeffs


# ============================================================
# Fourier coefficients of P_q, two ways
# ============================================================


def _c_support_cap(n, y):
    """Largest c with 1/(c^2 y) inside [1/n, inf): psi(Im gz) can only be
    nonzero for c <= sqrt(n/y)."""
    return int(math.floor(math.sqrt(n / y) + 1e-12))


def aq_kloosterman(q, r, y, psi, c_max):
    """psi(y) delta_{q=r} plus the truncated Kloosterman-sum form of the
    c >= 1 part of a_q(r, y, psi)."""
    q, r = int(q), int(r)
    y = _check_y(y)
    n = psi.n
    c_cap = min(int(c_max), _c_support_cap(n, y))
    delta_term = float(psi.psi(y)) if q == r else 0.0
    total = complex(delta_term)
    err = 0.0
    terms = 0
    for c in range(1, c_cap + 1):
        csq_y = c * c * y
        x_hi_sq = n / csq_y - 1.0
        if x_hi_sq <= 0.0:
            continue
        x_hi = math.sqrt(x_hi_sq)
        x_lo = math.sqrt(max(0.0, n / (2.0 * csq_y) - 1.0))
        s = classical_kloosterman(r, q, c).value

        def f(pts, csq_y=csq_y):
            x = pts[:, 0]
            v = 1.0 / (csq_y * (x * x + 1.0))
            phase = r * x * y + q * x * v
            return 2.0 * np.cos(_TWO_PI * phase) * psi.psi(v)

        res = adaptive_quad(f, ((x_lo, x_hi),), tol=1e-12, max_depth=6)
        total += y * s * res.value
        err += y * abs(s) * res.abs_error_estimate
        terms += 1
    return QuadResult(total, err, f"c sum: {terms} terms (c <= {c_cap}) + delta term")


def aq_direct(q, r, y, psi, coset_cap):
    """int_0^1 e(-rx) P_q(z, psi) dx by direct summation over coset
    representatives (c, d), gcd(c, d) = 1, 0 <= c <= coset_cap."""
    q, r = int(q), int(r)
    y = _check_y(y)
    n = psi.n
    c_cap = min(int(coset_cap), _c_support_cap(n, y))
    d_reach = math.sqrt(n * y)
    reps = []
    for c in range(1, c_cap + 1):
        for d in range(int(math.floor(-c - d_reach)), int(math.ceil(d_reach)) + 1):
            if math.gcd(c, d) != 1:
                continue
            _, s, t = ext_gcd(c, d)
            # a c + b d with a d - b c = 1: take a = t, b = -s.
            reps.append((t, -s, c, d))

    def f(pts):
        x = pts[:, 0]
        z = x + 1j * y
        total = np.exp(2j * np.pi * q * x) * float(psi.psi(y))
        for a, b, c, d in reps:
            w = (a * z + b) / (c * z + d)
            phi = psi.psi(w.imag)
            total = total + np.exp(2j * np.pi * q * w.real) * phi
        return total * np.exp(-2j * np.pi * r * x)

    res = adaptive_quad(f, ((0.0, 1.0),), tol=1e-12, max_depth=6)
    return QuadResult(
        res.value, res.abs_error_estimate,
        f"coset sum: {len(reps)} representatives (c <= {c_cap}) + c=0 term",
    )


# ============================================================
# shifted convolution demo
# ============================================================


class ShiftedSum(NamedTuple):
    value: float
    n: float
    trivial_scale: float
    reference_scale: float
    terms: int


def shifted_sum_demo(q, n, psi=None):
    """I = sum_m tau(m) tau(m+q) int y^{k-2} exp(-2 pi (2m+q) y) psi(y) dy

    alongside the trivial scale N and the N^{3/4} reference.  The m-sum
    is truncated at 4N, where the exponential factor has decayed to
    ~1e-10 of its peak against the tau growth.
    """
    q = int(q)
    if q < 1:
        raise ValueError("the shift q must be a positive integer")
    n = float(n)
    if not 1.0 <= n <= 512.0:
        raise ValueError("the scale N must lie in [1, 512]")
    if psi is None:
        psi = default_psi(n)
    m_cap = int(math.ceil(4.0 * n))
    taus = tau_coeffs(m_cap + q)
    peak = (2.0 / n) ** (TAU_WEIGHT - 2) / n
    total = 0.0
    for m in range(1, m_cap + 1):
        rate = _TWO_PI * (2 * m + q)

        def f(pts, rate=rate):
            v = pts[:, 0]
            return v ** (TAU_WEIGHT - 2) * np.exp(-rate * v) * psi.psi(v)

        res = adaptive_quad(f, ((1.0 / n, 2.0 / n),), tol=1e-10 * peak, max_depth=5)
        total += taus[m - 1] * taus[m + q - 1] * res.value
    return ShiftedSum(total, n, n, n**0.75, m_cap)
