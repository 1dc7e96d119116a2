"""Adaptive compression policies for linear Gaussian signal-plus-noise models.

The heavy lifting lives in the compiled extension ``adacomp._core``; this
package re-exports its public surface.
"""

from adacomp._core import (  # noqa: F401
    AdacompError,
    AlphaFamilyResult,
    BlockAllocation,
    Compressor,
    FiniteActionSet,
    GaussianSignalModel,
    GreedyStep,
    Method,
    OracleResult,
    PolicyTrace,
    PosteriorState,
    ScalarSensingState,
    Theorem,
    TheoremConditionReport,
    WaterFillSolution,
    __version__,
    allocations,
    alpha_family,
    check_theorem4,
    check_theorem5,
    construct_gtilde,
    effective_eigenvalues,
    effective_noise_cov,
    entropy,
    evaluate_policy,
    exhaustive_optimal,
    eigenvector_action_set,
    find_r,
    greedy_blockfill,
    greedy_over_finite_set,
    grid_search_scalar_m2,
    gtilde_objective,
    initial_state,
    lemma6_certificate,
    make_allocation,
    optimal_blockfill,
    per_stage_gain,
    posterior_update,
    posterior_update_woodbury,
    recover_compressors,
    relaxed_optimal_value,
    repro_json,
    repro_names,
    run_scenario_json,
    scalar_greedy_run,
    scalar_greedy_step,
    scalar_init_state,
    scalar_snr_ratio,
    simulate_measurements,
    water_level,
    waterfill_solve,
)
