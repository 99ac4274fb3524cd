"""Classical and symplectic Kloosterman sums, with exact-rational phases.

Notation: e(x) = exp(2*pi*i*x) and e_c(x) = e(x/c).  Every sum in this
module reduces its phase mod 1 in exact integer arithmetic (numerator mod
denominator) before touching floating point, so the only rounding error is
the final |error| <= phase_count * 2^-50 from summing unit complex numbers.

  * classical_kloosterman:  S(m, n; c) = sum_{d mod c, (d,c)=1}
        e_c(m d + n dbar).
  * symplectic_kloosterman: K(Q, T; C) = sum_D e(Tr(A C^-1 Q + C^-1 D T)),
    D over completable residues mod C*Lambda', A any completion of (C, D).
  * rank1_charsum: the rank-one character sum
        K1 = sum*_{d1 mod c} sum_{d2 mod c}
             e_c(d1 g1 + d2 g2 + d1bar (f1 -+ d2 f2 + d2^2 f3)),
    with (f1, f2, f3) the form triple of U Q U^t and (g1, g2, g3) that of
    V^-1 T V^-t; the inner sign is opposite to the `sign` argument.
  * coset_reps(beta): representatives gamma_{p,q} of SL2(Z) / Gamma^0(beta),
    where Gamma^0(beta) is the upper-right-divisible-by-beta subgroup.
  * pq_from_C / t_param: the (p, q) coset data of a primitive C with
    det C = beta >= 1, and the induced residue t = t1 p^2 + t2 p q + t3 q^2
    mod beta whose gcd with beta is the canonical output.
  * kitaoka_ratio: |K(Q,T;C)| divided by alpha1^2 alpha2^(1/2)
    gcd(alpha2, t)^(1/2), the raw bound ratio with no epsilon factor.
"""

import cmath
import math
from functools import lru_cache
from typing import NamedTuple

from .arith import (
    complete_pair,
    divisors,
    enumerate_D_classes,
    ext_gcd,
    mat2_adj,
    mat2_det,
    mat2_is_unimodular,
    mat2_mul,
    snf2,
    sym_congruence,
    sym_eval,
)


class KloostermanValue(NamedTuple):
    """An evaluated exponential sum.

    value: the complex sum; phase_count: number of summands;
    max_phase_denominator: largest reduced denominator among the phases.
    Always |value| <= phase_count.
    """

    value: complex
    phase_count: int
    max_phase_denominator: int


class CosetRep(NamedTuple):
    """A representative gamma = [[r, p], [-s, q]] of SL2(Z)/Gamma^0(beta),
    det = r q + p s = 1, right column (p, q)^t, q | beta, gcd(p, q) = 1."""

    p: int
    q: int
    gamma: tuple


class TParam(NamedTuple):
    """t_rep is one representative of t mod beta; only gcd_t_beta is
    independent of the (p, q) lift choices."""

    t_rep: int
    beta: int
    gcd_t_beta: int


# ============================================================
# phase tables
# ============================================================


@lru_cache(maxsize=None)
def _e_table(c):
    """e(k/c) for k = 0..c-1."""
    return tuple(cmath.exp(2j * math.pi * k / c) for k in range(c))


@lru_cache(maxsize=None)
def _units_with_inverses(c):
    """Pairs (d, dbar) with d running over units mod c."""
    return tuple(
        (d, pow(d, -1, c)) for d in range(c) if math.gcd(d, c) == 1
    )


def _reduced_denominator(num, c):
    return c // math.gcd(num, c)


# ============================================================
# classical Kloosterman sums
# ============================================================


def classical_kloosterman(m, n, c):
    """S(m, n; c) = sum over units d mod c of e_c(m d + n dbar)."""
    if c < 1:
        raise ValueError("modulus must be a positive integer")
    table = _e_table(c)
    total = 0j
    maxden = 1
    units = _units_with_inverses(c)
    for d, dbar in units:
        num = (m * d + n * dbar) % c
        total += table[num]
        maxden = max(maxden, _reduced_denominator(num, c))
    return KloostermanValue(total, len(units), maxden)


# ============================================================
# symplectic Kloosterman sums
# ============================================================


@lru_cache(maxsize=None)
def _completed_classes(c):
    """Per-class integer phase data for K(Q, T; C).

    For each completable residue D mod C*Lambda' pick a completion A and
    return the pair of symmetric integer matrices A*adj(C) and adj(C)*D as
    coefficient triples (S11, S12, S22).  The phase of the class is then
    (S_A . Q + S_D . T) / det(C) where the dot is the trace pairing
    S11 q1 + S12 q2 + S22 q3.
    """
    adj = mat2_adj(c)
    out = []
    for d in enumerate_D_classes(c):
        completed = complete_pair(c, d)
        if completed is None:  # pragma: no cover - classes are completable
            raise AssertionError("enumerate_D_classes returned a bad class")
        a = completed[0]
        na = mat2_mul(a, adj)
        md = mat2_mul(adj, d)
        if na[1] != na[2] or md[1] != md[2]:  # pragma: no cover
            raise AssertionError("A C^-1 or C^-1 D not symmetric")
        out.append(((na[0], na[1], na[3]), (md[0], md[1], md[3])))
    return tuple(out)


def symplectic_kloosterman(q, t, c):
    """K(Q, T; C) over completable D mod C*Lambda'."""
    det = mat2_det(c)
    if det == 0:
        raise ValueError("det(C) = 0")
    modulus = abs(det)
    sgn = 1 if det > 0 else -1
    table = _e_table(modulus)
    total = 0j
    maxden = 1
    classes = _completed_classes(tuple(c))
    for qa_coeffs, td_coeffs in classes:
        num = (
            qa_coeffs[0] * q[0] + qa_coeffs[1] * q[1] + qa_coeffs[2] * q[2]
            + td_coeffs[0] * t[0] + td_coeffs[1] * t[1] + td_coeffs[2] * t[2]
        )
        num = (sgn * num) % modulus
        total += table[num]
        maxden = max(maxden, _reduced_denominator(num, modulus))
    return KloostermanValue(total, len(classes), maxden)


# ============================================================
# rank-1 character sum
# ============================================================


def rank1_charsum(q, t, c, u, v, sign):
    """K1(Q, T, c, U, V) for one branch of the rank-one sum.

    With U Q U^t = [[f1, f2/2], [f2/2, f3]] and
    V^-1 T V^-t = [[g1, g2/2], [g2/2, g3]]:

        sum*_{d1 mod c} sum_{d2 mod c}
            e_c(d1 g1 + d2 g2 + d1bar (f1 - sign*d2 f2 + d2^2 f3)).

    `sign` is +1 or -1 and enters with the opposite sign in front of the
    cross term, matching the two branches of the rank-one decomposition.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if c < 1:
        raise ValueError("modulus must be a positive integer")
    if not mat2_is_unimodular(u):
        raise ValueError("U must be unimodular")
    if not mat2_is_unimodular(v):
        raise ValueError("V must be unimodular")
    f1, f2, f3 = sym_congruence(u, q)
    # V^-1 T V^-t = adj(V) T adj(V)^t since det(V)^2 = 1.
    g1, g2, _g3 = sym_congruence(mat2_adj(v), t)
    table = _e_table(c)
    total = 0j
    count = 0
    maxden = 1
    for d1, d1bar in _units_with_inverses(c):
        base = d1 * g1
        for d2 in range(c):
            num = (base + d2 * g2
                   + d1bar * (f1 - sign * d2 * f2 + d2 * d2 * f3)) % c
            total += table[num]
            count += 1
            maxden = max(maxden, _reduced_denominator(num, c))
    return KloostermanValue(total, count, maxden)


# ============================================================
# coset representatives of SL2(Z) / Gamma^0(beta)
# ============================================================


def _coprime_lift(p0, step, q):
    """Smallest nonnegative p = p0 (mod step) with gcd(p, q) = 1."""
    p = p0
    for _ in range(q + 1):
        if math.gcd(p, q) == 1:
            return p
        p += step
    raise AssertionError("no coprime representative in class")


def coset_reps(beta):
    """All gamma_{p,q} with q | beta, p mod beta/q, gcd(p, q) = 1.

    A residue class p0 mod beta/q contains a representative coprime to q
    exactly when gcd(p0, gcd(q, beta/q)) = 1; the rep chosen is the
    smallest nonnegative such p.  The left column comes from
    ext_gcd(q, p) = (1, r, s), giving gamma = [[r, p], [-s, q]] of det 1.
    """
    if beta < 1:
        raise ValueError("beta must be a positive integer")
    reps = []
    for q in divisors(beta):
        step = beta // q
        core = math.gcd(q, step)
        for p0 in range(step):
            if math.gcd(p0, core) != 1:
                continue
            p = _coprime_lift(p0, step, q)
            _, r, s = ext_gcd(q, p)
            reps.append(CosetRep(p, q, (r, p, -s, q)))
    return reps


def coset_index(beta):
    """[SL2(Z) : Gamma^0(beta)] = beta * prod_{p | beta} (1 + 1/p)."""
    index = beta
    n = beta
    for p in range(2, n + 1):
        if p * p > n:
            break
        if n % p == 0:
            index = index // p * (p + 1)
            while n % p == 0:
                n //= p
    if n > 1:
        index = index // n * (n + 1)
    return index


# ============================================================
# the (p, q) parameters and t of a primitive C
# ============================================================


def pq_from_C(c):
    """Coset data (p, q) of a primitive C with det C = beta >= 1.

    q = gcd(c1, c3); with c1 r + c3 s = q, p is determined mod beta/q by
    -p = c2 r + c4 s.  The returned p is the smallest nonnegative member
    of its class with gcd(p, q) = 1.
    """
    c1, c2, c3, c4 = c
    if math.gcd(math.gcd(c1, c2), math.gcd(c3, c4)) != 1:
        raise ValueError("C must be primitive")
    beta = mat2_det(c)
    if beta < 1:
        raise ValueError("det(C) must be positive")
    q, r, s = ext_gcd(c1, c3)
    step = beta // q
    p0 = (-(c2 * r + c4 * s)) % step
    return _coprime_lift(p0, step, q), q


def t_param(c, t):
    """The residue t = t1 p^2 + t2 p q + t3 q^2 mod beta and its gcd
    with beta.  Only the gcd is independent of the p-lift."""
    p, q = pq_from_C(c)
    beta = mat2_det(c)
    t_rep = (t[0] * p * p + t[1] * p * q + t[2] * q * q) % beta
    return TParam(t_rep, beta, math.gcd(t_rep, beta))


# ============================================================
# Kitaoka-bound ratio sweeps
# ============================================================


def kitaoka_ratio(q, t, c):
    """|K(Q, T; C)| / (alpha1^2 alpha2^(1/2) gcd(alpha2, t)^(1/2)).

    (alpha1, alpha2) are the elementary divisors of C and t is the
    quadratic form T evaluated on the second column of the V with
    U C V = diag(alpha1, alpha2), det V = +1.  The epsilon factor and
    the implied constant of the bound are dropped; the ratio is raw.
    """
    if t == (0, 0, 0):
        raise ValueError("T must be nonzero")
    dec = snf2(c)
    a1, a2 = dec.alphas
    tval = sym_eval(t, dec.v[1], dec.v[3])
    g = math.gcd(a2, tval)
    kv = symplectic_kloosterman(q, t, c)
    return abs(kv.value) / (a1 * a1 * math.sqrt(a2) * math.sqrt(g))


def iter_nonsingular_C(max_norm):
    """All C with det C != 0 and sup-norm at most max_norm, in row-major
    lexicographic order."""
    rng = range(-max_norm, max_norm + 1)
    for c1 in rng:
        for c2 in rng:
            for c3 in rng:
                for c4 in rng:
                    if c1 * c4 - c2 * c3 != 0:
                        yield (c1, c2, c3, c4)


def kitaoka_sweep_row(q, t, c):
    """One sweep record: (c1, c2, c3, c4, alpha1, alpha2, gcd_t, |K|, ratio)."""
    dec = snf2(c)
    a1, a2 = dec.alphas
    tval = sym_eval(t, dec.v[1], dec.v[3])
    g = math.gcd(a2, tval)
    kv = symplectic_kloosterman(q, t, c)
    absk = abs(kv.value)
    ratio = absk / (a1 * a1 * math.sqrt(a2) * math.sqrt(g))
    return (c[0], c[1], c[2], c[3], a1, a2, g, absk, ratio)


def kitaoka_sweep(q, t, max_norm):
    """Sweep rows for every nonsingular C with sup-norm <= max_norm."""
    return [kitaoka_sweep_row(q, t, c) for c in iter_nonsingular_C(max_norm)]
