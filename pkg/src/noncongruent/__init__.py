"""Non-congruence certificates for odd square-free n = p_1 ... p_t q.

The main entry point is :func:`certify`; see the README for the CLI.
"""
from ._accel import BACKEND, HAVE_NUMBA
from .arith import Factored, factor_squarefree, hilbert, is_prime, jacobi, legendre, phi_map, quartic, v2
from .classgroup import (
    ClassNumberResult,
    Discriminant,
    RedeiData,
    TernaryWitness,
    class_number,
    discriminant,
    eight_rank_jung_yue,
    eight_rank_quartic_553,
    eight_rank_quartic_5557,
    eight_rank_waterhouse,
    k_set,
    redei,
    ternary_solve,
    ternary_witnesses,
)
from .descent import (
    DivisorPair,
    MonskyData,
    SolutionTuple,
    build_A,
    monsky,
    odd_local_ok,
    p_v_split,
    star,
    witness_search,
    z_set,
)
from .errors import *  # noqa: F401,F403
from .gf2 import BitMatrix, block_assemble, inverse, nullspace, rank, schur_rank, solve
from .quant import DensityReport, empirical_scan, monte_carlo_rank_frequency, p_rank_prob, pi_k_asymptotic, predicted_count
from .theorems import (
    Certificate,
    Family,
    FamilyInfo,
    Method,
    TunnellResult,
    Verdict,
    certify,
    check_hypotheses,
    detect_family,
    root_number,
    tunnell_check,
)

__version__ = "0.1.0"
