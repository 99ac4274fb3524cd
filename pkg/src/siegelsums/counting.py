"""Lattice-counting oracles and bound-ratio harnesses.

  * repr_count(T, n, X): exact number of (x, y) in Z^2 with
    T(x, y) = t1 x^2 + t2 x y + t3 y^2 = n and |x| + |y| <= X.
  * n_count(X, W, T): the weighted count
        N(X, W, T) = sum over primitive C, ||C||_2 <= X, 0 != |det C| <= W
                     of gcd(t(C, T), |det C|)^(1/2),
    with t(C, T) the coset-residue parameter of C (see expsums.t_param).
  * gcd_square_sum(d, X) = sum_{n <= X} gcd(d, n^2) / n.
  * quadform_min(M): min over real u of m1 u^2 + m2 u + m3
    = (4 m1 m3 - m2^2) / (4 m1) for positive definite M.

Counts are exact integers; the weighted sums evaluate each gcd exactly and
only the final square roots and the compensated summation are floating
point.  Bound ratios are reported raw, with every epsilon exponent set to
zero and no implied constants.
"""

import math
from typing import NamedTuple

import numpy as np

from .arith import sym_det4, sym_eval, sym_is_posdef
from .expsums import t_param


class CountSweepRow(NamedTuple):
    """One harness record: ratio = exact_count / bound_value with
    bound_value = W * X^2 (constants and epsilons dropped)."""

    x: float
    w: float
    t: tuple
    exact_count: float
    bound_value: float
    ratio: float


def repr_count(t, n, x):
    """|{(x, y) in Z^2 : T(x, y) = n, |x| + |y| <= X}| by direct scan."""
    if sym_det4(t) == 0:
        raise ValueError("det(T) = 0")
    if n == 0:
        raise ValueError("n must be nonzero")
    if x < 1:
        raise ValueError("X must be at least 1")
    bound = math.floor(x)
    count = 0
    for xx in range(-bound, bound + 1):
        rest = math.floor(x - abs(xx))
        for yy in range(-rest, rest + 1):
            if sym_eval(t, xx, yy) == n:
                count += 1
    return count


def _first_row_flip(c):
    """diag(-1, 1) * C; flips the determinant sign and leaves the valid-V
    set (hence the t parameter) unchanged."""
    return (-c[0], -c[1], c[2], c[3])


def gcd_t_det(c, t):
    """gcd(t(C, T), |det C|) for primitive nonsingular C of either
    determinant sign."""
    if c[0] * c[3] - c[1] * c[2] < 0:
        c = _first_row_flip(c)
    return t_param(c, t).gcd_t_beta


def _ball_primitive_C(x, w):
    """Primitive integer C with ||C||_2 <= X and 0 != |det C| <= W, as an
    (n, 4) array.  Vectorized prefilter; the entries stay exact int64."""
    bound = math.floor(x)
    side = np.arange(-bound, bound + 1, dtype=np.int64)
    c1, c2, c3, c4 = np.meshgrid(side, side, side, side, indexing="ij")
    keep = c1 * c1 + c2 * c2 + c3 * c3 + c4 * c4 <= x * x
    det = c1 * c4 - c2 * c3
    keep &= (det != 0) & (np.abs(det) <= w)
    keep &= np.gcd(np.gcd(c1, c2), np.gcd(c3, c4)) == 1
    return np.stack([c1[keep], c2[keep], c3[keep], c4[keep]], axis=1)


def n_count(x, w, t):
    """N(X, W, T): sum of gcd(t(C, T), |det C|)^(1/2) over primitive C
    with c1^2 + c2^2 + c3^2 + c4^2 <= X^2 and 0 != |det C| <= W."""
    if t == (0, 0, 0):
        raise ValueError("T must be nonzero")
    if x < 1 or w < 1:
        raise ValueError("X and W must be at least 1")
    cs = _ball_primitive_C(x, w)
    return math.fsum(
        math.sqrt(gcd_t_det((int(r[0]), int(r[1]), int(r[2]), int(r[3])), t))
        for r in cs
    )


def count_sweep_row(x, w, t):
    """Evaluate one (X, W, T) cell of the bound harness."""
    value = n_count(x, w, t)
    bound = w * x * x
    return CountSweepRow(x, w, t, value, bound, value / bound)


def count_sweep(xs, ws, ts):
    """All (X, W, T) cells of a sweep grid, row-major over (T, X, W)."""
    return [count_sweep_row(x, w, t) for t in ts for x in xs for w in ws]


def gcd_square_sum(d, x):
    """sum_{n <= X} gcd(d, n^2) / n with exact per-term gcds."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    if x < 1:
        raise ValueError("X must be at least 1")
    bound = math.floor(x)
    return math.fsum(math.gcd(d, n * n) / n for n in range(1, bound + 1))


def quadform_min(m):
    """min_u (m1 u^2 + m2 u + m3) = (4 m1 m3 - m2^2) / (4 m1), M
    positive definite."""
    if not sym_is_posdef(m):
        raise ValueError("M must be positive definite")
    return sym_det4(m) / (4 * m[0])
