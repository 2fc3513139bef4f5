"""Robust Chinese remainder reconstruction from erroneous remainders."""

from ._core import (
    Bound,
    BoundsReport,
    CandidateSet,
    CapExceeded,
    FoldingSolution,
    GroupingProposal,
    Inconsistent,
    ReferenceGroupBounds,
    StageBounds,
    StageSolution,
    TrialStats,
    candidate_sets,
    crt_general,
    fused_error_bound,
    lcm,
    minimal_covers,
    per_group_reference_bounds,
    per_remainder_bounds,
    propose_grouping,
    prune_redundant,
    prune_subset_sets,
    reconstruct_tree,
    remainders_of,
    run_trials,
    select_reference,
    solve_folding,
    stage_bounds,
    theta_bound,
)

__all__ = [name for name in dir() if not name.startswith("_")]
