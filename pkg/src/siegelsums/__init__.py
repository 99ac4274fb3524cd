"""Exponential sums, lattice counts, and Poincare-series Fourier
coefficients for degree-two modular objects, at desk scale.

The package is organized by machinery:

    arith       exact 2x2/4x4 integer linear algebra, SNF, symplectic pairs
    expsums     classical and symplectic Kloosterman sums, coset reps
    counting    lattice counts, representation numbers, gcd sums
    weyl        Weyl action, polar lines, H0 and the completed zeta
    quadrature  bump test functions and adaptive tensor quadrature
    transforms  Laplace-type integrals, the weight W, support cutoffs
    poincare    Fourier coefficients a0, a1, a2 of the Poincare series
    gl2         the classical 2x2 model: delta identities, a_q, tau
    config      run-time settings (key=value files, documented defaults)
    formats     CSV/JSON emission with a fixed scalar encoding
    cli         command-line front end (`siegelsums <subcommand>`)

The names below are the stable public surface; everything else may move.
"""

from siegelsums.arith import (
    IwasawaCoords,
    SnfDecomp,
    complete_pair,
    ext_gcd,
    iota,
    iota_inverse,
    snf2,
)
from siegelsums.config import DEFAULTS, RunConfig, load_config
from siegelsums.counting import CountSweepRow, gcd_square_sum, n_count, repr_count
from siegelsums.expsums import (
    KloostermanValue,
    classical_kloosterman,
    coset_index,
    coset_reps,
    kitaoka_sweep,
    rank1_charsum,
    symplectic_kloosterman,
    t_param,
)
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
from siegelsums.poincare import (
    FourierCoeffRequest,
    a0,
    a1_truncated,
    a2_truncated,
)
from siegelsums.quadrature import (
    QuadResult,
    TestFunction,
    adaptive_quad,
    bump,
    default_test_function,
)
from siegelsums.transforms import (
    laplace_I,
    laplace_I1,
    rank1_integral,
    rank2_integral,
    rank2_is_supported,
    weight_W,
)
from siegelsums.weyl import (
    WEYL_GROUP,
    h0_eval,
    hstar_eval,
    polar_lines,
    weyl_table,
    zeta_completed,
    zeta_real,
)

__version__ = "0.1.0"

__all__ = [
    "IwasawaCoords",
    "SnfDecomp",
    "complete_pair",
    "ext_gcd",
    "iota",
    "iota_inverse",
    "snf2",
    "DEFAULTS",
    "RunConfig",
    "load_config",
    "CountSweepRow",
    "gcd_square_sum",
    "n_count",
    "repr_count",
    "KloostermanValue",
    "classical_kloosterman",
    "coset_index",
    "coset_reps",
    "kitaoka_sweep",
    "rank1_charsum",
    "symplectic_kloosterman",
    "t_param",
    "aq_direct",
    "aq_kloosterman",
    "default_omega",
    "default_psi",
    "delta_divisor",
    "delta_kloosterman",
    "shifted_sum_demo",
    "tau_coeffs",
    "FourierCoeffRequest",
    "a0",
    "a1_truncated",
    "a2_truncated",
    "QuadResult",
    "TestFunction",
    "adaptive_quad",
    "bump",
    "default_test_function",
    "laplace_I",
    "laplace_I1",
    "rank1_integral",
    "rank2_integral",
    "rank2_is_supported",
    "weight_W",
    "WEYL_GROUP",
    "h0_eval",
    "hstar_eval",
    "polar_lines",
    "weyl_table",
    "zeta_completed",
    "zeta_real",
    "__version__",
]
