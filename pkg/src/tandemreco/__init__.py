"""Reconstruction codes for strings subject to fixed-length tandem duplication.

The library covers the duplication calculus (descendants, roots, cone
coordinates), the induced metric, constant-weight codes on integer
simplices, reconstruction-code verification/construction/decoding, and a
numerical capacity engine, with brute-force oracles throughout.
"""

from .capacity import (
    CapacityProfile,
    ConstraintGraph,
    binary_entropy,
    build_chain,
    cal_H,
    capacity_profile,
    default_theta,
    fixed_point_map,
    hamming_fraction_bound,
    irr_capacity,
    perron_lambda,
    pi1,
    q_ary_entropy,
    rate_R,
    rate_R_alt,
    rate_R_prime,
    refine_bounds,
    regime_distance,
    sample_rll,
    x0_bisect,
    x0_bounds,
    x0_solve,
)
from .duplication import (
    DupParams,
    PhiImage,
    RootDecomposition,
    Word,
    channel_sample,
    cone_dimension,
    descendants,
    is_irreducible,
    mu_sigma,
    phi,
    phi_inv,
    psi,
    psi_inv,
    rebuild_diff,
    root,
    root_decomposition,
    tandem_duplicate,
    word,
)
from .errors import (
    AmbiguityError,
    ConeMismatchError,
    DecodeError,
    DegenerateParamsError,
    DimensionMismatchError,
    DomainError,
    InfeasibleGeometryError,
    InvertedIntervalError,
    NoCandidateError,
    NonConvergenceError,
    NotIrreducibleError,
    ParamsMismatchError,
    RegimeParamsError,
    ResourceCapError,
    SearchBudgetError,
    TandemError,
    WeightMismatchError,
    WordLengthError,
)
from .metric import (
    cone_intersection_size,
    descendant_count,
    duplication_distance,
    duplication_distance_bfs,
    join_meet,
)
from .simplex import (
    SimplexCode,
    SimplexPoint,
    asymptotic_simplex_rate,
    ball_size,
    ball_size_bruteforce,
    binom,
    congruence_class_sizes,
    enumerate_simplex,
    exact_max_code,
    greedy_code,
    half_manhattan,
    is_sidon_set,
    max_clique_bitset,
    min_half_distance,
    required_distance,
    required_distance_upper_entropy,
    required_distance_upper_log,
    sidon_code,
    sidon_code_size,
    sidon_set,
    simplex_size,
)
from .utr import (
    SimulationReport,
    UtrCheck,
    UtrCode,
    construction_a,
    count_rll_weight,
    exact_size,
    greedy_size,
    irreducible_count,
    irreducible_words,
    is_utr_code_direct,
    is_utr_code_reduced,
    max_utr_code_bruteforce,
    reconstruct,
    reconstruct_scan,
    sidon_size,
    simulate_reconstruction,
    utr_size_formula,
)

__version__ = "0.1.0"
