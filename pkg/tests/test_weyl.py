"""Tests for the Weyl group action, P/H0/H, completed zeta, and H*."""

import math
import random
from decimal import Decimal
from fractions import Fraction

import mpmath as mp
import pytest

from siegelsums.weyl import (
    WEYL_BY_NAME,
    WEYL_GROUP,
    ell1,
    ell10,
    h0_eval,
    h_eval,
    hstar_args,
    hstar_eval,
    hstar_normalizer,
    line_contains,
    origin_lines,
    p_eval,
    polar_lines,
    weyl_act,
    weyl_compose,
    weyl_table,
    zeta_completed,
    zeta_real,
)

# Independent transcription of the action formulas (the displayed table),
# used as the oracle for the matrix encoding.
_ACTION_FORMULAS = {
    "1": lambda v1, v2: (v1, v2),
    "sa": lambda v1, v2: (2 * v2 - v1, v2),
    "sb": lambda v1, v2: (v1, v1 - v2),
    "sasb": lambda v1, v2: (2 * v2 - v1, -v1 + v2),
    "sbsa": lambda v1, v2: (v1 - 2 * v2, v1 - v2),
    "sasbsa": lambda v1, v2: (-v1, v2 - v1),
    "sbsasb": lambda v1, v2: (v1 - 2 * v2, -v2),
    "w0": lambda v1, v2: (-v1, -v2),
}

_DETS = {
    "1": 1, "sa": -1, "sb": -1, "sasb": 1,
    "sbsa": 1, "sasbsa": -1, "sbsasb": -1, "w0": 1,
}


def _random_complex_pair(rng, scale=2.0):
    return (
        complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale)),
        complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale)),
    )


# ============================================================
# group structure
# ============================================================


def test_actions_match_formula_table():
    rng = random.Random(7)
    for _ in range(20):
        v1, v2 = _random_complex_pair(rng)
        for name, formula in _ACTION_FORMULAS.items():
            assert weyl_act(WEYL_BY_NAME[name], v1, v2) == formula(v1, v2)


def test_dets():
    for w in WEYL_GROUP:
        assert w.det == _DETS[w.name]
        m = w.matrix
        assert m[0] * m[3] - m[1] * m[2] == w.det


def test_group_closure_and_det_homomorphism():
    assert len({w.matrix for w in WEYL_GROUP}) == 8
    for w1 in WEYL_GROUP:
        for w2 in WEYL_GROUP:
            prod = weyl_compose(w1, w2)  # KeyError if not closed
            assert prod.det == w1.det * w2.det


def test_every_element_has_an_inverse_in_the_set():
    identity = WEYL_BY_NAME["1"]
    for w in WEYL_GROUP:
        assert any(weyl_compose(w, v) == identity for v in WEYL_GROUP)


def test_names_compose_as_right_action():
    # The name "sasb" denotes the word s_a s_b, whose coordinate matrix is
    # M_sb * M_sa (acting on points reverses the word).
    sa, sb = WEYL_BY_NAME["sa"], WEYL_BY_NAME["sb"]
    assert weyl_compose(sb, sa).name == "sasb"
    assert weyl_compose(sa, sb).name == "sbsa"
    w0 = weyl_compose(weyl_compose(sa, sb), weyl_compose(sa, sb))
    assert w0.name == "w0"


def test_weyl_table_shape():
    rows = weyl_table()
    assert len(rows) == 8
    assert [r[0] for r in rows] == list(_ACTION_FORMULAS)
    assert rows[1] == ("sa", -1, "(-v1+2*v2, v2)")
    assert rows[7] == ("w0", 1, "(-v1, -v2)")


# ============================================================
# polar lines
# ============================================================


def test_polar_lines_inventory():
    lines = polar_lines()
    assert len(lines) == 12
    by_label = {l.label: l for l in lines}
    assert (by_label["L6"].a, by_label["L6"].b, by_label["L6"].c) == (1, 0, 1)
    # v2 = -1/2 stored with cleared denominators
    assert (by_label["L8"].a, by_label["L8"].b, by_label["L8"].c) == (0, 2, -1)
    assert [l.label for l in origin_lines()] == ["L1", "L4", "L7", "L10"]


def test_point_2_32_lies_on_exactly_L2_and_L11():
    hits = [l.label for l in polar_lines() if line_contains(l, 2, 1.5)]
    assert hits == ["L2", "L11"]


# ============================================================
# P: exact expansion oracle
# ============================================================

# prod_w l1(w(v)) l10(w(v)) expanded by exact integer polynomial
# multiplication (independent of p_eval's evaluation order).
_P_TERMS = (
    (4, 12, 4096),
    (5, 11, -24576),
    (6, 10, 63488),
    (7, 9, -92160),
    (8, 8, 82176),
    (9, 7, -46080),
    (10, 6, 15872),
    (11, 5, -3072),
    (12, 4, 256),
)


def _expand_p():
    def pmul(p, q):
        out = {}
        for (i, j), a in p.items():
            for (k, l), b in q.items():
                out[(i + k, j + l)] = out.get((i + k, j + l), 0) + a * b
        return out

    poly = {(0, 0): 1}
    for w in WEYL_GROUP:
        m = w.matrix
        l1 = {(1, 0): m[0] - 2 * m[2], (0, 1): m[1] - 2 * m[3]}
        l10 = {(1, 0): -2 * m[0] + 2 * m[2], (0, 1): -2 * m[1] + 2 * m[3]}
        poly = pmul(poly, pmul(l1, l10))
    return {k: v for k, v in poly.items() if v}


def _p_oracle(v1, v2):
    return sum(c * v1**i * v2**j for i, j, c in _P_TERMS)


def test_p_expansion_matches_frozen_terms():
    assert _expand_p() == {(i, j): c for i, j, c in _P_TERMS}


def test_p_closed_form_factorization():
    rng = random.Random(11)
    for _ in range(25):
        v1, v2 = _random_complex_pair(rng)
        closed = 256 * (v1 * v2 * (v1 - 2 * v2) * (v1 - v2)) ** 4
        assert abs(p_eval(v1, v2) - closed) <= 1e-10 * max(1.0, abs(closed))


def test_p_examples():
    assert p_eval(0, 0) == 0
    assert p_eval(Fraction(2), Fraction(3, 2)) == 1296
    assert p_eval(2, 1.5) == 1296.0
    for nu in (1, 1j, 0.3):
        assert p_eval(2 * nu, nu) == 0  # exact zero factor at w = 1


def test_p_matches_exact_expansion_at_rational_points():
    rng = random.Random(13)
    for _ in range(20):
        v1 = Fraction(rng.randint(-8, 8), rng.randint(1, 5))
        v2 = Fraction(rng.randint(-8, 8), rng.randint(1, 5))
        assert p_eval(v1, v2) == _p_oracle(v1, v2)


def test_p_is_weyl_invariant():
    rng = random.Random(17)
    for _ in range(50):
        v1, v2 = _random_complex_pair(rng)
        base = p_eval(v1, v2)
        for w in WEYL_GROUP:
            x, y = weyl_act(w, v1, v2)
            assert abs(p_eval(x, y) - base) <= 1e-10 * max(1.0, abs(base))


def _taylor_shift(poly, a, b):
    out = {}
    for (i, j), c in poly.items():
        for k in range(i + 1):
            for l in range(j + 1):
                key = (k, l)
                out[key] = out.get(key, Fraction(0)) + (
                    c * math.comb(i, k) * math.comb(j, l)
                    * Fraction(a) ** (i - k) * Fraction(b) ** (j - l)
                )
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("point", [(1, 1), (0, Fraction(1, 2))])
def test_p_vanishes_to_order_exactly_4(point):
    shifted = _taylor_shift(_expand_p(), *point)
    assert min(i + j for i, j in shifted) == 4


@pytest.mark.parametrize("point", [(1.0, 1.0), (0.0, 0.5)])
def test_p_low_order_partials_vanish_by_finite_differences(point):
    h = 1e-3
    x0, y0 = point
    scale = max(
        abs(p_eval(x0 + dx, y0 + dy))
        for dx in (-0.5, -0.25, 0.25, 0.5)
        for dy in (-0.5, -0.25, 0.25, 0.5)
    )

    def d1(f, x, y, axis):
        if axis == 0:
            return (f(x + h, y) - f(x - h, y)) / (2 * h)
        return (f(x, y + h) - f(x, y - h)) / (2 * h)

    fs = {(): p_eval}
    for order in range(1, 4):
        new = {}
        for key, f in fs.items():
            for axis in (0, 1):
                new[key + (axis,)] = (
                    lambda x, y, f=f, axis=axis: d1(f, x, y, axis)
                )
        fs = new
        for key, f in fs.items():
            assert abs(f(x0, y0)) <= 1e-4 * scale, (point, key)


# ============================================================
# H00, H0, H
# ============================================================


def test_h0_reference_value():
    val = h0_eval(2, 1.5)
    assert val.imag == 0
    assert abs(val.real - 851.215) <= 1e-3
    closed = 2 * (
        math.exp(6.25) - math.exp(3.25) - math.exp(4.25) + math.exp(1.25)
    )
    assert abs(val.real - closed) <= 1e-12 * closed


def test_h0_runs_fast_enough_for_interactive_use():
    import time

    h0_eval(2, 1.5)  # warm up
    t0 = time.perf_counter()
    h0_eval(2, 1.5)
    assert time.perf_counter() - t0 < 1e-3


def test_h0_vanishes_exactly_on_reflection_fixed_loci():
    for nu in (0.3, 1.0, 2.7, 1j):
        assert h0_eval(2 * nu, nu) == 0  # fixed by sb, which has det -1
        assert h0_eval(nu, nu) == 0  # fixed by sa


def test_h0_and_h_are_det_equivariant():
    pts = [(0.7, 0.3 + 0.2j)]
    rng = random.Random(19)
    pts += [_random_complex_pair(rng, scale=1.5) for _ in range(10)]
    for v1, v2 in pts:
        h0 = h0_eval(v1, v2)
        hh = h_eval(v1, v2)
        for w in WEYL_GROUP:
            x, y = weyl_act(w, v1, v2)
            assert abs(h0_eval(x, y) - w.det * h0) <= 1e-12 * max(1.0, abs(h0))
            assert abs(h_eval(x, y) - w.det * hh) <= 1e-11 * max(1.0, abs(hh))


# ============================================================
# completed zeta
# ============================================================


def test_zeta_star_closed_forms():
    assert abs(zeta_completed(2.0) - math.pi / 6) <= 1e-10
    assert abs(zeta_completed(4.0) - math.pi**2 / 90) <= 1e-10
    apery = 1.2020569031595942854
    assert abs(zeta_completed(3.0) - apery / (2 * math.pi)) <= 1e-10


def test_zeta_against_high_precision_oracle():
    mp.mp.dps = 30
    for s in (1.1, 1.5, 2.0, 2.2, 3.7, 7.0, 15.0, 21.0, 31.0, 41.0):
        ours = zeta_real(s)
        ref = float(mp.zeta(s))
        assert abs(ours - ref) <= 1e-10 * abs(ref), s
        ours_star = zeta_completed(s)
        ref_star = float(
            mp.pi ** (-mp.mpf(s) / 2) * mp.gamma(mp.mpf(s) / 2) * mp.zeta(s)
        )
        assert abs(ours_star - ref_star) <= 1e-10 * abs(ref_star), s


def test_zeta_domain_errors():
    for s in (1.0, 0.5, 0.0, -3.0):
        with pytest.raises(ValueError):
            zeta_real(s)
        with pytest.raises(ValueError):
            zeta_completed(s)


# ============================================================
# H*
# ============================================================

# mpmath (dps 40) recomputation of P * H0 * zeta-star factors, frozen:
_HSTAR_FROZEN = {
    (2, 1.5): "6345.178183461194293734",
    (3, 2.1): "525926539.3949349814014",
    (30, 20): "3.837490375293790572318e+597",
}


def _hstar_oracle(v1, v2):
    mp.mp.dps = 40
    pv = _p_oracle(Fraction(str(v1)), Fraction(str(v2)))
    h0 = mp.mpf(0)
    for w in WEYL_GROUP:
        x, y = weyl_act(w, mp.mpf(str(v1)), mp.mpf(str(v2)))
        h0 += w.det * mp.e ** (x * x + y * y)
    z = mp.mpf(1)
    for a in hstar_args(mp.mpf(str(v1)), mp.mpf(str(v2))):
        z *= mp.pi ** (-a / 2) * mp.gamma(a / 2) * mp.zeta(a)
    return mp.mpf(pv.numerator) / pv.denominator * h0 * z


def test_hstar_frozen_values():
    for (v1, v2), frozen in _HSTAR_FROZEN.items():
        ours = mp.mpf(str(hstar_eval(v1, v2)))
        ref = mp.mpf(frozen)
        assert abs(ours - ref) <= 1e-10 * abs(ref), (v1, v2)


def test_hstar_matches_second_implementation():
    ours = float(hstar_eval(3, 2.1))
    ref = float(_hstar_oracle(3, 2.1))
    assert abs(ours - ref) <= 1e-8 * abs(ref)


def test_hstar_returns_decimal_and_is_finite_at_large_parameters():
    big = hstar_eval(30, 20)
    assert isinstance(big, Decimal)
    assert big.is_finite()
    assert big > 0


def test_hstar_region_check():
    # each violation trips a different zeta* argument
    for v1, v2 in ((0.5, 3.0), (3.0, 0.0), (6.0, 2.0), (1.5, 1.5)):
        bad = [a for a in hstar_args(v1, v2) if a <= 1]
        assert bad, "test point should be out of region"
        with pytest.raises(ValueError):
            hstar_eval(v1, v2)


def test_h_vanishes_on_odd_fixed_loci():
    # Fixed loci of det(-1) elements force H = 0; they sit exactly on the
    # boundary of the H* region (one zeta* argument equals 1), so the
    # vanishing is checked on H itself.
    for t in (0.7, 2.0, 4.0):
        assert h_eval(t, t) == 0
        assert 2 * t - 2 * t + 1 == 1  # the boundary zeta* argument
        assert h_eval(2 * t, t) == 0


def test_hstar_normalizer_is_reference_point_value():
    assert hstar_normalizer() == hstar_eval(2, 1.5)
