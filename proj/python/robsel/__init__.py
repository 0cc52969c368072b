"""Robust information-source selection for penalty-aware hypothesis testing.

Thin wrapper around the compiled extension. Source subsets cross the
boundary as integer bitmasks (bit i = source i).
"""

from robsel._core import (
    AttackResult,
    BoundReport,
    ConvergenceReport,
    DegenerateRatio,
    EnumerationRefused,
    Evaluator,
    InstanceLabels,
    InvalidInput,
    LikelihoodModel,
    PenaltyMatrix,
    ProblemInstance,
    RatioBundle,
    SelectionOutcome,
    SourcePartition,
    aggregate_ratios,
    c_gp_value,
    curvature_bounds,
    exact_bipartite_subadditivity,
    exact_curvature,
    exact_inverse_curvature,
    exact_submodularity_ratio,
    exact_superadditivity,
    gamma_bound,
    h_func,
    oblivious_select,
    optimal_robust_selection,
    random_equivalence_structure,
    random_instance,
    random_penalty_matrix,
    robust_greedy_max_penalty,
    robust_greedy_total_penalty,
    run_experiment,
    simulate_convergence,
    synthesize_likelihoods,
    theorem2_factor,
    theorem3_factor,
    vanilla_greedy,
    worst_case_attack,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
