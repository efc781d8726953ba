"""Burn-in selection and simulation for response-adaptive two-arm trials."""

from ._rarburn import (
    __version__,
    burnin_budget,
    design_ids,
    final_allocation_error,
    metrics,
    recommend_burnin,
    reproduce_table,
    run_oc,
    score_z,
    simulate_trial,
    standardized_effect,
    thompson_prob,
    wald_z,
    Error,
)

__all__ = [
    "burnin_budget",
    "design_ids",
    "final_allocation_error",
    "metrics",
    "recommend_burnin",
    "reproduce_table",
    "run_oc",
    "score_z",
    "simulate_trial",
    "standardized_effect",
    "thompson_prob",
    "wald_z",
    "Error",
]
