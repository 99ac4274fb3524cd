"""Tests for the classical 2x2 model: delta identities, Ramanujan tau,
coset-vs-Kloosterman Fourier coefficients, and the shifted-sum demo.

The two delta expansions (divisor form and Kloosterman form) are exact
identities, so they are compared at 1e-12 against each other and against
the indicator of n = 0.  The a_q coefficient has two independent
implementations -- a brute-force sum over coprime coset representatives
and the rearranged Kloosterman/oscillatory-integral form -- which must
agree within their combined quadrature error estimates.  tau values are
exact integers and are checked against frozen constants, the
multiplicativity relation, and the Hecke recursion at p^2.
"""

import math

import numpy as np
import pytest

from siegelsums.arith import divisors
from siegelsums.expsums import classical_kloosterman
from siegelsums.gl2 import (
    aq_direct,
    aq_kloosterman,
    default_omega,
    default_psi,
    delta_divisor,
    delta_kloosterman,
    shifted_sum_demo,
    tau_coeffs,
)

# ============================================================
# weight functions
# ============================================================


def test_omega_normalization():
    om = default_omega()
    total = sum(om.omega(n) for n in range(1, 11))
    # delta(0) = 2 * sum_d omega(d) must equal 1 exactly.
    assert 2.0 * total == pytest.approx(1.0, abs=1e-12)


def test_omega_is_even_and_supported_on_annulus():
    om = default_omega()
    for x in (0.6, 0.9, 1.3, 1.8, 2.2, 2.45):
        assert om.omega(-x) == pytest.approx(om.omega(x), abs=1e-15)
    assert om.omega(0.0) == 0.0
    assert om.omega(0.49) == 0.0
    assert om.omega(2.51) == 0.0
    assert om.omega(1.5) > 0.0
    assert om.inner == pytest.approx(0.5)
    assert om.support == pytest.approx(2.5)


def test_psi_support_is_dyadic_window():
    ps = default_psi(16)
    assert ps.n == pytest.approx(16.0)
    assert ps.psi(0.99 / 16) == 0.0
    assert ps.psi(2.01 / 16) == 0.0
    assert ps.psi(1.5 / 16) > 0.0
    assert ps.psi(1.0) == 0.0  # y of order 1 is far outside the window


# ============================================================
# delta identities (exact)
# ============================================================


def test_delta_divisor_detects_zero():
    om = default_omega()
    assert delta_divisor(0, om) == pytest.approx(1.0, abs=1e-12)


def test_delta_divisor_vanishes_off_zero():
    om = default_omega()
    for n in range(1, 301):
        assert abs(delta_divisor(n, om)) <= 1e-12, n
        assert abs(delta_divisor(-n, om)) <= 1e-12, n


def test_delta_kloosterman_matches_divisor_form():
    om = default_omega()
    for n in (0, 1, 2, 7, 12, 30, -5, -30):
        cap = max(4, 2 * abs(n) + 2)
        dk = delta_kloosterman(n, om, c_max=cap, k_max=cap)
        assert dk.truncation_exact
        assert dk.value == pytest.approx(delta_divisor(n, om), abs=1e-12)


def test_delta_kloosterman_truncation_flag():
    om = default_omega()
    # |n|/inner = 60 live terms; a cap of 3 cannot be exact.
    dk = delta_kloosterman(30, om, c_max=3, k_max=3)
    assert not dk.truncation_exact
    assert dk.caps_needed > 3


def test_delta_kloosterman_rejects_empty_caps():
    om = default_omega()
    with pytest.raises(ValueError):
        delta_kloosterman(5, om, c_max=0, k_max=4)
    with pytest.raises(ValueError):
        delta_kloosterman(5, om, c_max=4, k_max=0)


# ============================================================
# Ramanujan tau
# ============================================================

TAU_FIRST_TWELVE = [
    1,
    -24,
    252,
    -1472,
    4830,
    -6048,
    -16744,
    84480,
    -113643,
    -115920,
    534612,
    -370944,
]


def test_tau_frozen_values():
    assert tau_coeffs(12) == TAU_FIRST_TWELVE
    assert tau_coeffs(100)[99] == 37534859200


def test_tau_multiplicative_on_coprime_pairs():
    cap = 50
    tau = tau_coeffs(cap * cap)
    for m in range(2, cap + 1):
        for n in range(m + 1, cap + 1):
            if math.gcd(m, n) == 1:
                assert tau[m * n - 1] == tau[m - 1] * tau[n - 1], (m, n)


def test_tau_hecke_recursion_at_prime_squares():
    tau = tau_coeffs(49)
    for p in (2, 3, 5, 7):
        assert tau[p * p - 1] == tau[p - 1] ** 2 - p**11


# ============================================================
# Weil bound for the classical Kloosterman sums used here
# ============================================================


def test_weil_bound_on_demo_range():
    rng = np.random.default_rng(7)
    for _ in range(60):
        m = int(rng.integers(-20, 21))
        n = int(rng.integers(-20, 21))
        c = int(rng.integers(1, 61))
        s = classical_kloosterman(m, n, c)
        g = math.gcd(math.gcd(abs(m), abs(n)), c)
        bound = len(divisors(c)) * math.sqrt(c * g)
        assert abs(s.value) <= bound + 1e-9, (m, n, c)


# ============================================================
# a_q coefficients: Kloosterman form vs direct coset sum
# ============================================================


def test_aq_forms_agree():
    ps = default_psi(16)
    for r in (0, 1, -1, 2):
        kl = aq_kloosterman(1, r, 1.0, ps, c_max=12)
        di = aq_direct(1, r, 1.0, ps, coset_cap=40)
        tol = kl.abs_error_estimate + di.abs_error_estimate + 1e-10
        assert abs(kl.value - di.value) <= tol, (r, kl.value, di.value)


def test_aq_conjugation_symmetry():
    ps = default_psi(16)
    a = aq_direct(1, 2, 1.0, ps, coset_cap=30)
    b = aq_direct(-1, -2, 1.0, ps, coset_cap=30)
    assert b.value == pytest.approx(np.conj(a.value), abs=1e-12)


def test_aq_delta_term_vanishes_off_psi_support():
    # q = r, so the c = 0 coset contributes psi(y); with y of order one
    # and the window at [1/16, 2/16] that factor is identically zero.
    ps = default_psi(16)
    res = aq_kloosterman(3, 3, 1.0, ps, c_max=0)
    assert res.value == 0.0
    assert "0 terms" in res.region


def test_aq_cap_beyond_support_is_exact():
    # c is capped by sqrt(N/y) = 4; raising c_max past that changes nothing.
    ps = default_psi(16)
    a = aq_kloosterman(1, 1, 1.0, ps, c_max=6)
    b = aq_kloosterman(1, 1, 1.0, ps, c_max=60)
    assert a.value == b.value


def test_aq_rejects_y_outside_band():
    ps = default_psi(16)
    with pytest.raises(ValueError):
        aq_kloosterman(1, 0, 0.1, ps, c_max=4)
    with pytest.raises(ValueError):
        aq_direct(1, 0, 5.0, ps, coset_cap=10)


# ============================================================
# shifted divisor-type sums
# ============================================================


def test_shifted_sum_rejects_bad_arguments():
    with pytest.raises(ValueError):
        shifted_sum_demo(0, 32)
    with pytest.raises(ValueError):
        shifted_sum_demo(-1, 32)
    with pytest.raises(ValueError):
        shifted_sum_demo(1, 600)


def test_shifted_sum_below_trivial_line():
    s = shifted_sum_demo(1, 32)
    assert s.trivial_scale == pytest.approx(32.0)
    assert abs(s.value) < 0.9 * s.trivial_scale
    assert s.value == pytest.approx(-6.212944949764986e-07, rel=1e-6)


def test_shifted_sum_ratio_band():
    # |I(N)| / N^{3/4} across a dyadic sweep: consecutive ratios stay
    # within a factor-of-two band at q = 2, and no entry at q in {1, 2}
    # ever exceeds twice the first entry (no growth beyond the N^{3/4}
    # shape).  The lower side is not enforced for q = 1, where sign
    # cancellation drives the sum down faster than the shape.
    sizes = (32, 64, 128)
    ratios2 = []
    for n in sizes:
        s = shifted_sum_demo(2, n)
        ratios2.append(abs(s.value) / s.reference_scale)
    for prev, cur in zip(ratios2, ratios2[1:]):
        assert 0.5 * prev <= cur <= 2.0 * prev
    ratios1 = [
        abs(shifted_sum_demo(1, n).value) / shifted_sum_demo(1, n).reference_scale
        for n in sizes
    ]
    for seq in (ratios1, ratios2):
        for cur in seq:
            assert cur <= 2.0 * seq[0]


def test_shifted_sum_reports_term_count():
    s = shifted_sum_demo(1, 32)
    assert s.terms == 128  # m runs to 4N
    assert s.n == pytest.approx(32.0)
