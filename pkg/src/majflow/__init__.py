"""Majorization flow on probability simplices, with the entropic continuity
bounds and optimal Lipschitz constants it produces, verified by brute force."""

from .bounds import (
    BoundReport,
    ScalingRow,
    collision_closed_form,
    dimensional_scaling_table,
    g_eps,
    gamma_ratio_renyi_tsallis,
    hinf_tight_uniform,
    lipschitz_concave_smoothed,
    lipschitz_convex_type,
    lipschitz_special,
    prior_art_bound,
    tight_uniform_bound,
)
from .distinct import (
    DistinctBound,
    TrialSpec,
    cdf_distinct,
    distinct_uniform_bound,
    expected_distinct,
    pmf_distinct,
    simulate_distinct,
)
from .entropy import (
    EntropyClass,
    EntropyFamily,
    GammaValue,
    catalogue,
    eval_entropy,
    eval_many,
    gamma,
    smoothed_eval,
    validate_concavity,
)
from .flow import FlowPath, Generator, flow_path, flow_point, generator, verify_semigroup
from .oracle import OracleConfig, ball_max_search, ball_sample, fd_gamma, majorization_pairs
from .quantum import (
    DensityMatrix,
    density_matrix_from_json,
    flow_state,
    free_energy_identity_check,
    hermitian_eigenvalues,
    load_density_matrix,
    spectrum_sorted,
    trace_distance,
)
from .simplex import (
    GroupedSpectrum,
    ProbVec,
    extremal,
    group_spectrum,
    majorizes,
    make_probvec,
    schur_convexity_witness,
    sort_desc,
    tv_distance,
    uniform,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
